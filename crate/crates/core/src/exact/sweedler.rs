//! Evaluator for formulas written in Sweedler notation.
//!
//! A formula is an [`Expr`] tree acting on *legs*: the tensor factors of an
//! intermediate value. Each leg lives in a [`Space`] that may carry a product,
//! coproduct, counit, antipode, and structure map. Every operation names the
//! legs it touches, so parenthesization is always explicit and nothing is ever
//! re-associated behind the caller's back.
//!
//! Identities are checked on all basis tuples at once: each input is replaced
//! by the canonical element `Σ_b e_b ⊗ [b]`, where the tag `[b]` rides along
//! untouched and records which basis tuple produced a term.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use smallvec::SmallVec;

use super::linalg::Vector;
use super::scalar::Scalar;
use super::tensor::{AlphaPowers, BilinearMap, CoproductMap, Idx, SparseMap, TensorElement};
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Failure, Outcome};

pub type SpaceId = usize;

type Key = SmallVec<[Idx; 16]>;
const UNSET: Idx = Idx::MAX;

/// A vector space taking part in a formula, with whatever structure it carries.
#[derive(Clone, Debug)]
pub struct Space {
    pub name: String,
    pub basis: Arc<Vec<String>>,
    pub alpha: Arc<AlphaPowers>,
    pub product: Option<Arc<BilinearMap>>,
    pub unit: Option<Arc<Vector>>,
    pub coproduct: Option<Arc<CoproductMap>>,
    pub counit: Option<Arc<Vec<Scalar>>>,
    pub antipode: Option<Arc<SparseMap>>,
}

impl Space {
    /// A bare space with a structure map and nothing else.
    pub fn plain(
        name: impl Into<String>,
        basis: Arc<Vec<String>>,
        alpha: Arc<AlphaPowers>,
    ) -> Self {
        Space {
            name: name.into(),
            basis,
            alpha,
            product: None,
            unit: None,
            coproduct: None,
            counit: None,
            antipode: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The spaces and actions a family of formulas refers to.
#[derive(Clone, Debug, Default)]
pub struct Context {
    spaces: Vec<Space>,
    actions: Vec<((SpaceId, SpaceId), Arc<BilinearMap>)>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_space(&mut self, space: Space) -> SpaceId {
        self.spaces.push(space);
        self.spaces.len() - 1
    }

    /// Registers `h · m` for `h` in space `h` and `m` in space `m`.
    pub fn add_action(&mut self, h: SpaceId, m: SpaceId, action: Arc<BilinearMap>) -> Result<()> {
        let (a, b, c) = action.dims();
        if a != self.spaces[h].dim() || b != self.spaces[m].dim() || c != self.spaces[m].dim() {
            return Err(Error::mismatch(format!(
                "action of {} on {} has shape {a}x{b}->{c}",
                self.spaces[h].name, self.spaces[m].name
            )));
        }
        self.actions.retain(|(k, _)| *k != (h, m));
        self.actions.push(((h, m), action));
        Ok(())
    }

    pub fn space(&self, id: SpaceId) -> &Space {
        &self.spaces[id]
    }

    pub fn num_spaces(&self) -> usize {
        self.spaces.len()
    }

    pub fn action(&self, h: SpaceId, m: SpaceId) -> Option<&BilinearMap> {
        self.actions
            .iter()
            .find(|(k, _)| *k == (h, m))
            .map(|(_, a)| a.as_ref())
    }

    fn dims(&self, spaces: &[SpaceId]) -> Vec<usize> {
        spaces.iter().map(|&s| self.spaces[s].dim()).collect()
    }

    /// Human-readable rendering using basis names.
    pub fn render(&self, m: &Multi) -> String {
        if m.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (key, c)) in m.terms.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            if !c.is_one() || m.arity() == 0 {
                let _ = write!(out, "{c}");
                if m.arity() > 0 {
                    out.push('·');
                }
            }
            let legs: Vec<&str> = (0..m.arity())
                .map(|l| self.spaces[m.spaces[l]].basis[key[l] as usize].as_str())
                .collect();
            out.push_str(&legs.join("⊗"));
            if m.slots > 0 {
                let tags: Vec<String> = key[m.arity()..].iter().map(|t| t.to_string()).collect();
                let _ = write!(out, "[{}]", tags.join(","));
            }
        }
        out
    }
}

/// Sparse element of a tensor product of spaces, optionally carrying input tags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multi {
    spaces: SmallVec<[SpaceId; 8]>,
    slots: usize,
    /// Sorted by key, no zero coefficients, keys are legs followed by tags.
    terms: Vec<(Key, Scalar)>,
}

impl Multi {
    pub fn zero(spaces: &[SpaceId]) -> Self {
        Multi {
            spaces: spaces.into(),
            slots: 0,
            terms: Vec::new(),
        }
    }

    /// The scalar `c` as a zero-leg element.
    pub fn scalar(c: Scalar) -> Self {
        Self::canonical(SmallVec::new(), 0, vec![(Key::new(), c)])
    }

    pub fn basis(spaces: &[SpaceId], index: &[usize]) -> Self {
        assert_eq!(spaces.len(), index.len());
        let key: Key = index.iter().map(|&i| i as Idx).collect();
        Multi {
            spaces: spaces.into(),
            slots: 0,
            terms: vec![(key, Scalar::one())],
        }
    }

    pub fn from_terms(
        spaces: &[SpaceId],
        terms: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Self {
        let terms = terms
            .into_iter()
            .map(|(k, c)| {
                assert_eq!(k.len(), spaces.len());
                (k.into_iter().map(|i| i as Idx).collect(), c)
            })
            .collect();
        Self::canonical(spaces.into(), 0, terms)
    }

    pub fn from_vector(space: SpaceId, v: &Vector) -> Self {
        Self::from_terms(&[space], v.support().map(|(i, c)| (vec![i], c.clone())))
    }

    pub fn from_tensor<const N: usize>(spaces: [SpaceId; N], t: &TensorElement<N>) -> Self {
        let terms = t
            .iter()
            .map(|(k, c)| (k.iter().copied().collect(), c.clone()))
            .collect();
        Self::canonical(spaces.as_slice().into(), 0, terms)
    }

    pub fn to_vector(&self, dim: usize) -> Vector {
        assert_eq!(self.arity(), 1);
        let mut v = Vector::zero(dim);
        for (k, c) in &self.terms {
            v[k[0] as usize] = c.clone();
        }
        v
    }

    pub fn to_tensor<const N: usize>(&self, dims: [usize; N]) -> TensorElement<N> {
        assert_eq!(self.arity(), N);
        let mut t = TensorElement::zero(dims);
        for (k, c) in &self.terms {
            t.add_term(std::array::from_fn(|l| k[l]), c.clone());
        }
        t
    }

    /// Value of a zero-leg element.
    pub fn to_scalar(&self) -> Scalar {
        assert_eq!(self.arity(), 0);
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    /// `Σ_b e_b ⊗ [b]` over all basis tuples of `spaces`, tagged into slots
    /// `offset..offset+spaces.len()` of `slots`.
    fn identity(ctx: &Context, spaces: &[SpaceId], offset: usize, slots: usize) -> Self {
        let dims = ctx.dims(spaces);
        let total: usize = dims.iter().product();
        let mut terms = Vec::with_capacity(total);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..total {
            let mut key: Key = idx.iter().map(|&i| i as Idx).collect();
            key.extend(std::iter::repeat_n(UNSET, slots));
            for (l, &i) in idx.iter().enumerate() {
                key[spaces.len() + offset + l] = i as Idx;
            }
            terms.push((key, Scalar::one()));
            for l in (0..dims.len()).rev() {
                idx[l] += 1;
                if idx[l] < dims[l] {
                    break;
                }
                idx[l] = 0;
            }
        }
        Self::canonical(spaces.into(), slots, terms)
    }

    fn canonical(
        spaces: SmallVec<[SpaceId; 8]>,
        slots: usize,
        mut terms: Vec<(Key, Scalar)>,
    ) -> Self {
        sort_terms(&mut terms);
        let mut out: Vec<(Key, Scalar)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some((lk, lc)) if *lk == k => *lc += &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((k, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Multi {
            spaces,
            slots,
            terms: out,
        }
    }

    pub fn arity(&self) -> usize {
        self.spaces.len()
    }

    pub fn spaces(&self) -> &[SpaceId] {
        &self.spaces
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    /// Leg indices and coefficients (tags stripped only when there are none).
    pub fn terms(&self) -> impl Iterator<Item = (&[Idx], &Scalar)> {
        self.terms.iter().map(|(k, c)| (&k[..], c))
    }

    pub fn add(&self, other: &Multi) -> Result<Multi> {
        if self.spaces != other.spaces {
            return Err(Error::mismatch("sum of elements in different spaces"));
        }
        let slots = self.slots.max(other.slots);
        let mut terms: Vec<(Key, Scalar)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        for m in [self, other] {
            for (k, c) in &m.terms {
                let mut k = k.clone();
                k.extend(std::iter::repeat_n(UNSET, slots - m.slots));
                terms.push((k, c.clone()));
            }
        }
        Ok(Self::canonical(self.spaces.clone(), slots, terms))
    }

    pub fn scale(&self, s: &Scalar) -> Multi {
        if s.is_zero() {
            return Multi {
                spaces: self.spaces.clone(),
                slots: self.slots,
                terms: Vec::new(),
            };
        }
        Multi {
            spaces: self.spaces.clone(),
            slots: self.slots,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect(),
        }
    }

    fn check_leg(&self, leg: usize) -> Result<SpaceId> {
        self.spaces.get(leg).copied().ok_or_else(|| {
            Error::mismatch(format!(
                "leg {leg} out of range for a {}-leg element",
                self.arity()
            ))
        })
    }

    fn map_leg(&self, leg: usize, f: &SparseMap, to: SpaceId) -> Multi {
        let mut spaces = self.spaces.clone();
        spaces[leg] = to;
        if let Some(d) = f.diagonal() {
            // Keys are unchanged, so the order is kept.
            let terms = self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * &d[k[leg] as usize]))
                .collect();
            return Multi {
                spaces,
                slots: self.slots,
                terms,
            };
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            for (i, a) in f.column(k[leg] as usize) {
                let mut k2 = k.clone();
                k2[leg] = *i;
                terms.push((k2, c * a));
            }
        }
        Self::canonical(spaces, self.slots, terms)
    }
}

/// Packs a key into one byte per entry, preserving order. `None` if some entry
/// does not fit or the key is too long.
fn packed(k: &Key) -> Option<u128> {
    if k.len() > 16 {
        return None;
    }
    let mut out = 0u128;
    for &i in k {
        let b = if i == UNSET {
            255
        } else if i < 255 {
            i as u128
        } else {
            return None;
        };
        out = (out << 8) | b;
    }
    Some(out << (8 * (16 - k.len())))
}

fn sort_terms(terms: &mut Vec<(Key, Scalar)>) {
    if terms.len() < 2 {
        return;
    }
    let Some(mut order) = terms
        .iter()
        .enumerate()
        .map(|(n, (k, _))| packed(k).map(|p| (p, n as u32)))
        .collect::<Option<Vec<_>>>()
    else {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        return;
    };
    order.sort_unstable();
    let mut taken: Vec<Option<(Key, Scalar)>> =
        std::mem::take(terms).into_iter().map(Some).collect();
    terms.extend(
        order
            .into_iter()
            .map(|(_, n)| taken[n as usize].take().expect("each index once")),
    );
}

/// Formula tree. Leg positions refer to the value produced by the child.
#[derive(Clone, Debug)]
pub enum Expr {
    /// The `k`-th input.
    Input(usize),
    /// A fixed element such as a twist or an R-matrix.
    Const(Arc<Multi>),
    /// `η(1)` in the given space.
    Unit(SpaceId),
    /// Legs of the left value followed by legs of the right value.
    Tensor(Box<Expr>, Box<Expr>),
    /// `α^power` on one leg.
    Alpha {
        e: Box<Expr>,
        leg: usize,
        power: i32,
    },
    Antipode {
        e: Box<Expr>,
        leg: usize,
    },
    /// `ε` on one leg; the leg disappears.
    Counit {
        e: Box<Expr>,
        leg: usize,
    },
    /// `Δ` on one leg; it is replaced by two adjacent legs.
    Comul {
        e: Box<Expr>,
        leg: usize,
    },
    /// Product `(leg left)·(leg right)`, stored at the lower position; the other leg disappears.
    Mul {
        e: Box<Expr>,
        left: usize,
        right: usize,
    },
    /// Action `(leg h)·(leg m)`, stored at the lower position in the space of `m`.
    Act {
        e: Box<Expr>,
        h: usize,
        m: usize,
    },
    /// Arbitrary linear map on one leg, landing in space `to`.
    Map {
        e: Box<Expr>,
        leg: usize,
        map: Arc<SparseMap>,
        to: SpaceId,
    },
    /// Reinterprets a leg as living in another space of the same dimension.
    Recast {
        e: Box<Expr>,
        leg: usize,
        to: SpaceId,
    },
    /// Leg `l` of the result is leg `perm[l]` of the child.
    Permute {
        e: Box<Expr>,
        perm: SmallVec<[usize; 8]>,
    },
    /// Removes a leg of a one-dimensional space, keeping its coefficient.
    Drop {
        e: Box<Expr>,
        leg: usize,
    },
    /// Inserts the basis vector of a one-dimensional space at `pos`.
    Insert {
        e: Box<Expr>,
        pos: usize,
        space: SpaceId,
    },
    Scale {
        e: Box<Expr>,
        c: Scalar,
    },
    Sum(Vec<Expr>),
}

impl Expr {
    pub fn input(k: usize) -> Expr {
        Expr::Input(k)
    }

    pub fn constant(m: Multi) -> Expr {
        Expr::Const(Arc::new(m))
    }

    pub fn unit(space: SpaceId) -> Expr {
        Expr::Unit(space)
    }

    /// Tensor product of several factors, left to right.
    pub fn tensor_all(parts: impl IntoIterator<Item = Expr>) -> Expr {
        let mut it = parts.into_iter();
        let first = it.next().expect("at least one factor");
        it.fold(first, |acc, e| acc.tensor(e))
    }

    pub fn tensor(self, other: Expr) -> Expr {
        Expr::Tensor(Box::new(self), Box::new(other))
    }

    pub fn alpha(self, leg: usize, power: i32) -> Expr {
        if power == 0 {
            return self;
        }
        Expr::Alpha {
            e: Box::new(self),
            leg,
            power,
        }
    }

    pub fn antipode(self, leg: usize) -> Expr {
        Expr::Antipode {
            e: Box::new(self),
            leg,
        }
    }

    pub fn counit(self, leg: usize) -> Expr {
        Expr::Counit {
            e: Box::new(self),
            leg,
        }
    }

    pub fn comul(self, leg: usize) -> Expr {
        Expr::Comul {
            e: Box::new(self),
            leg,
        }
    }

    pub fn mul(self, left: usize, right: usize) -> Expr {
        Expr::Mul {
            e: Box::new(self),
            left,
            right,
        }
    }

    pub fn act(self, h: usize, m: usize) -> Expr {
        Expr::Act {
            e: Box::new(self),
            h,
            m,
        }
    }

    pub fn map(self, leg: usize, map: Arc<SparseMap>, to: SpaceId) -> Expr {
        Expr::Map {
            e: Box::new(self),
            leg,
            map,
            to,
        }
    }

    pub fn recast(self, leg: usize, to: SpaceId) -> Expr {
        Expr::Recast {
            e: Box::new(self),
            leg,
            to,
        }
    }

    pub fn permute(self, perm: &[usize]) -> Expr {
        if perm.iter().enumerate().all(|(i, &p)| i == p) {
            return self;
        }
        Expr::Permute {
            e: Box::new(self),
            perm: perm.into(),
        }
    }

    /// Swaps legs `a` and `b` of an `n`-leg value.
    pub fn swap(self, n: usize, a: usize, b: usize) -> Expr {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(a, b);
        self.permute(&perm)
    }

    /// Moves leg `from` to position `to` of an `n`-leg value, shifting the rest.
    pub fn move_leg(self, n: usize, from: usize, to: usize) -> Expr {
        let mut order: Vec<usize> = (0..n).filter(|&l| l != from).collect();
        order.insert(to, from);
        self.permute(&order)
    }

    pub fn drop_leg(self, leg: usize) -> Expr {
        Expr::Drop {
            e: Box::new(self),
            leg,
        }
    }

    pub fn insert(self, pos: usize, space: SpaceId) -> Expr {
        Expr::Insert {
            e: Box::new(self),
            pos,
            space,
        }
    }

    pub fn scale(self, c: Scalar) -> Expr {
        Expr::Scale {
            e: Box::new(self),
            c,
        }
    }

    pub fn sum(parts: Vec<Expr>) -> Expr {
        Expr::Sum(parts)
    }
}

/// Evaluates `expr` on the given inputs.
pub fn apply_sweedler(ctx: &Context, expr: &Expr, inputs: &[Multi]) -> Result<Multi> {
    eval(ctx, expr, inputs)
}

fn eval(ctx: &Context, expr: &Expr, inputs: &[Multi]) -> Result<Multi> {
    Ok(match expr {
        Expr::Input(k) => inputs.get(*k).cloned().ok_or_else(|| {
            Error::mismatch(format!(
                "formula uses input {k} but only {} given",
                inputs.len()
            ))
        })?,
        Expr::Const(m) => (**m).clone(),
        Expr::Unit(s) => {
            let unit = ctx.spaces[*s]
                .unit
                .as_ref()
                .ok_or_else(|| Error::missing(format!("unit of {}", ctx.spaces[*s].name)))?;
            Multi::from_vector(*s, unit)
        }
        Expr::Tensor(a, b) => tensor(&eval(ctx, a, inputs)?, &eval(ctx, b, inputs)?)?,
        Expr::Alpha { e, leg, power } => {
            let v = eval(ctx, e, inputs)?;
            let s = v.check_leg(*leg)?;
            let f = ctx.spaces[s].alpha.get(*power)?;
            if f.is_identity() {
                v
            } else {
                v.map_leg(*leg, f, s)
            }
        }
        Expr::Antipode { e, leg } => {
            let v = eval(ctx, e, inputs)?;
            let s = v.check_leg(*leg)?;
            let f = ctx.spaces[s]
                .antipode
                .as_ref()
                .ok_or_else(|| Error::missing(format!("antipode of {}", ctx.spaces[s].name)))?;
            v.map_leg(*leg, f, s)
        }
        Expr::Map { e, leg, map, to } => {
            let v = eval(ctx, e, inputs)?;
            let s = v.check_leg(*leg)?;
            if map.dim_in() != ctx.spaces[s].dim() || map.dim_out() != ctx.spaces[*to].dim() {
                return Err(Error::mismatch("linear map does not fit the leg"));
            }
            v.map_leg(*leg, map, *to)
        }
        Expr::Recast { e, leg, to } => {
            let mut v = eval(ctx, e, inputs)?;
            let s = v.check_leg(*leg)?;
            if ctx.spaces[s].dim() != ctx.spaces[*to].dim() {
                return Err(Error::mismatch(
                    "recast between spaces of different dimension",
                ));
            }
            v.spaces[*leg] = *to;
            v
        }
        Expr::Counit { e, leg } => {
            let v = eval(ctx, e, inputs)?;
            let s = v.check_leg(*leg)?;
            let eps = ctx.spaces[s]
                .counit
                .as_ref()
                .ok_or_else(|| Error::missing(format!("counit of {}", ctx.spaces[s].name)))?;
            let mut spaces = v.spaces.clone();
            spaces.remove(*leg);
            let mut terms = Vec::with_capacity(v.terms.len());
            for (k, c) in &v.terms {
                let w = &eps[k[*leg] as usize];
                if !w.is_zero() {
                    let mut k2 = k.clone();
                    k2.remove(*leg);
                    terms.push((k2, c * w));
                }
            }
            Multi::canonical(spaces, v.slots, terms)
        }
        Expr::Comul { e, leg } => {
            let v = eval(ctx, e, inputs)?;
            let s = v.check_leg(*leg)?;
            let delta = ctx.spaces[s]
                .coproduct
                .as_ref()
                .ok_or_else(|| Error::missing(format!("coproduct of {}", ctx.spaces[s].name)))?;
            let mut spaces = v.spaces.clone();
            spaces.insert(*leg, s);
            let mut terms = Vec::with_capacity(v.terms.len() * 2);
            for (k, c) in &v.terms {
                for (a, b, d) in delta.get(k[*leg] as usize) {
                    let mut k2 = k.clone();
                    k2[*leg] = *a;
                    k2.insert(*leg + 1, *b);
                    terms.push((k2, c * d));
                }
            }
            Multi::canonical(spaces, v.slots, terms)
        }
        Expr::Mul { e, left, right } => {
            let v = eval(ctx, e, inputs)?;
            let (sl, sr) = (v.check_leg(*left)?, v.check_leg(*right)?);
            if sl != sr || left == right {
                return Err(Error::mismatch(format!(
                    "product of legs {left} ({}) and {right} ({})",
                    ctx.spaces[sl].name, ctx.spaces[sr].name
                )));
            }
            let m = ctx.spaces[sl]
                .product
                .as_ref()
                .ok_or_else(|| Error::missing(format!("product of {}", ctx.spaces[sl].name)))?;
            contract(&v, *left, *right, sl, m)
        }
        Expr::Act { e, h, m } => {
            let v = eval(ctx, e, inputs)?;
            let (sh, sm) = (v.check_leg(*h)?, v.check_leg(*m)?);
            if h == m {
                return Err(Error::mismatch("action of a leg on itself"));
            }
            let a = ctx.action(sh, sm).ok_or_else(|| {
                Error::missing(format!(
                    "action of {} on {}",
                    ctx.spaces[sh].name, ctx.spaces[sm].name
                ))
            })?;
            contract(&v, *h, *m, sm, a)
        }
        Expr::Permute { e, perm } => {
            let v = eval(ctx, e, inputs)?;
            let n = v.arity();
            let mut seen = vec![false; n];
            if perm.len() != n
                || perm
                    .iter()
                    .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
            {
                return Err(Error::mismatch(format!(
                    "{perm:?} is not a permutation of {n} legs"
                )));
            }
            let spaces = perm.iter().map(|&p| v.spaces[p]).collect();
            let terms = v
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut k2: Key = perm.iter().map(|&p| k[p]).collect();
                    k2.extend_from_slice(&k[n..]);
                    (k2, c.clone())
                })
                .collect();
            Multi::canonical(spaces, v.slots, terms)
        }
        Expr::Drop { e, leg } => {
            let v = eval(ctx, e, inputs)?;
            let s = v.check_leg(*leg)?;
            if ctx.spaces[s].dim() != 1 {
                return Err(Error::mismatch("only one-dimensional legs can be dropped"));
            }
            let mut spaces = v.spaces.clone();
            spaces.remove(*leg);
            let terms = v
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut k2 = k.clone();
                    k2.remove(*leg);
                    (k2, c.clone())
                })
                .collect();
            Multi::canonical(spaces, v.slots, terms)
        }
        Expr::Insert { e, pos, space } => {
            let v = eval(ctx, e, inputs)?;
            if ctx.spaces[*space].dim() != 1 || *pos > v.arity() {
                return Err(Error::mismatch(
                    "can only insert a one-dimensional leg within range",
                ));
            }
            let mut spaces = v.spaces.clone();
            spaces.insert(*pos, *space);
            let terms = v
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut k2 = k.clone();
                    k2.insert(*pos, 0);
                    (k2, c.clone())
                })
                .collect();
            Multi::canonical(spaces, v.slots, terms)
        }
        Expr::Scale { e, c } => eval(ctx, e, inputs)?.scale(c),
        Expr::Sum(parts) => {
            let mut it = parts.iter();
            let first = it.next().ok_or_else(|| Error::mismatch("empty sum"))?;
            let mut acc = eval(ctx, first, inputs)?;
            for p in it {
                acc = acc.add(&eval(ctx, p, inputs)?)?;
            }
            acc
        }
    })
}

fn tensor(a: &Multi, b: &Multi) -> Result<Multi> {
    let (na, nb) = (a.arity(), b.arity());
    let slots = a.slots.max(b.slots);
    let mut spaces = a.spaces.clone();
    spaces.extend_from_slice(&b.spaces);
    let mut terms = Vec::with_capacity(a.terms.len() * b.terms.len());
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let mut k: Key = ka[..na].iter().chain(&kb[..nb]).copied().collect();
            for s in 0..slots {
                let ta = if s < a.slots { ka[na + s] } else { UNSET };
                let tb = if s < b.slots { kb[nb + s] } else { UNSET };
                if ta != UNSET && tb != UNSET {
                    return Err(Error::mismatch(
                        "an input occurs twice in a product; formulas must be multilinear",
                    ));
                }
                k.push(if ta != UNSET { ta } else { tb });
            }
            terms.push((k, ca * cb));
        }
    }
    Ok(Multi::canonical(spaces, slots, terms))
}

/// Replaces legs `x` and `y` by `f(leg x, leg y)`, stored at the lower position.
fn contract(v: &Multi, x: usize, y: usize, out_space: SpaceId, f: &BilinearMap) -> Multi {
    let (lo, hi) = (x.min(y), x.max(y));
    let mut spaces = v.spaces.clone();
    spaces[lo] = out_space;
    spaces.remove(hi);
    let mut terms = Vec::with_capacity(v.terms.len());
    for (k, c) in &v.terms {
        for (r, a) in f.get(k[x] as usize, k[y] as usize) {
            let mut k2 = k.clone();
            k2[lo] = *r;
            k2.remove(hi);
            terms.push((k2, c * a));
        }
    }
    Multi::canonical(spaces, v.slots, terms)
}

/// An equation between two formulas in the same inputs.
#[derive(Clone, Debug)]
pub struct Identity {
    pub id: String,
    /// Readable statement of what is being compared.
    pub anchor: String,
    /// Leg spaces of each input.
    pub inputs: Vec<Vec<SpaceId>>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Identity {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        inputs: Vec<Vec<SpaceId>>,
        lhs: Expr,
        rhs: Expr,
    ) -> Self {
        Identity {
            id: id.into(),
            anchor: anchor.into(),
            inputs,
            lhs,
            rhs,
        }
    }

    fn generic_inputs(&self, ctx: &Context) -> Vec<Multi> {
        let slots: usize = self.inputs.iter().map(Vec::len).sum();
        let mut offset = 0;
        self.inputs
            .iter()
            .map(|spaces| {
                let m = Multi::identity(ctx, spaces, offset, slots);
                offset += spaces.len();
                m
            })
            .collect()
    }

    /// Basis inputs for one tuple, one index per input leg.
    pub fn basis_inputs(&self, tuple: &[Vec<usize>]) -> Vec<Multi> {
        self.inputs
            .iter()
            .zip(tuple)
            .map(|(spaces, idx)| Multi::basis(spaces, idx))
            .collect()
    }

    /// Evaluates both sides on every basis tuple at once.
    pub fn evaluate(&self, ctx: &Context) -> Result<(Multi, Multi)> {
        let inputs = self.generic_inputs(ctx);
        let lhs = eval(ctx, &self.lhs, &inputs)?;
        let rhs = eval(ctx, &self.rhs, &inputs)?;
        if lhs.spaces != rhs.spaces {
            return Err(Error::mismatch(format!(
                "{}: sides land in different spaces",
                self.id
            )));
        }
        Ok((lhs, rhs))
    }

    /// Exact check over all basis tuples, reporting the first failing tuple.
    pub fn check(&self, ctx: &Context) -> CheckRecord {
        let start = Instant::now();
        let outcome = match self.evaluate(ctx) {
            Ok((lhs, rhs)) if lhs == rhs => Outcome::Pass,
            Ok((lhs, rhs)) => Outcome::Fail(self.first_failure(ctx, &lhs, &rhs)),
            Err(e) => Outcome::Fail(Failure::message(format!("evaluation error: {e}"))),
        };
        CheckRecord::new(&self.id, &self.anchor, outcome, start.elapsed())
    }

    fn first_failure(&self, ctx: &Context, lhs: &Multi, rhs: &Multi) -> Failure {
        let n = lhs.arity();
        let tag_of = |k: &Key| -> Key { k[n..].into() };
        let diff = lhs
            .add(&rhs.scale(&Scalar::from_int(-1)))
            .expect("same spaces");
        let tag = diff
            .terms
            .iter()
            .map(|(k, _)| tag_of(k))
            .min()
            .expect("sides differ");
        let restrict = |m: &Multi| {
            let terms = m
                .terms
                .iter()
                .filter(|(k, _)| tag_of(k) == tag)
                .map(|(k, c)| (k[..n].into(), c.clone()))
                .collect();
            Multi::canonical(m.spaces.clone(), 0, terms)
        };
        let mut inputs = Vec::new();
        let mut labels = Vec::new();
        let mut offset = 0;
        for spaces in &self.inputs {
            let idx: Vec<usize> = tag[offset..offset + spaces.len()]
                .iter()
                .map(|&t| t as usize)
                .collect();
            let names: Vec<&str> = spaces
                .iter()
                .zip(&idx)
                .map(|(&s, &i)| ctx.spaces[s].basis[i].as_str())
                .collect();
            labels.push(names.join("⊗"));
            inputs.push(idx);
            offset += spaces.len();
        }
        Failure {
            inputs,
            labels,
            lhs: ctx.render(&restrict(lhs)),
            rhs: ctx.render(&restrict(rhs)),
            detail: String::new(),
        }
    }
}

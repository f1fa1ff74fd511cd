//! Sparse structure tensors and elements of tensor powers.

use std::collections::BTreeMap;
use std::fmt;

use super::linalg::{LinearMap, Vector};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Basis index inside one tensor leg.
pub type Idx = u16;

/// Sparse column storage of a linear map: `column(j)` is the image of `e_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseMap {
    dim_out: usize,
    cols: Vec<Vec<(Idx, Scalar)>>,
}

impl SparseMap {
    pub fn identity(n: usize) -> Self {
        SparseMap {
            dim_out: n,
            cols: (0..n).map(|j| vec![(j as Idx, Scalar::one())]).collect(),
        }
    }

    pub fn from_linear(m: &LinearMap) -> Self {
        SparseMap {
            dim_out: m.rows(),
            cols: (0..m.cols())
                .map(|j| {
                    m.column_support(j)
                        .into_iter()
                        .map(|(i, c)| (i as Idx, c))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn to_linear(&self) -> LinearMap {
        let mut m = LinearMap::zero(self.dim_out, self.cols.len());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col {
                m[(*i as usize, j)] = c.clone();
            }
        }
        m
    }

    pub fn dim_in(&self) -> usize {
        self.cols.len()
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    #[inline]
    pub fn column(&self, j: usize) -> &[(Idx, Scalar)] {
        &self.cols[j]
    }

    pub fn is_identity(&self) -> bool {
        self.dim_out == self.cols.len()
            && self
                .cols
                .iter()
                .enumerate()
                .all(|(j, c)| c.len() == 1 && c[0].0 as usize == j && c[0].1.is_one())
    }

    /// The diagonal entries, when the map is diagonal with no zero on the diagonal.
    pub fn diagonal(&self) -> Option<Vec<Scalar>> {
        if self.dim_out != self.cols.len() {
            return None;
        }
        self.cols
            .iter()
            .enumerate()
            .map(|(j, c)| match c.as_slice() {
                [(i, a)] if *i as usize == j => Some(a.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim_out);
        for (j, x) in v.support() {
            for (i, c) in &self.cols[j] {
                out[*i as usize] += &(c * x);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SparseMap) -> SparseMap {
        assert_eq!(self.dim_in(), other.dim_out);
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<Idx, Scalar> = BTreeMap::new();
                for (k, a) in col {
                    for (i, b) in &self.cols[*k as usize] {
                        *acc.entry(*i).or_default() += &(a * b);
                    }
                }
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            })
            .collect();
        SparseMap {
            dim_out: self.dim_out,
            cols,
        }
    }
}

impl fmt::Debug for SparseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.to_linear(), f)
    }
}

fn push_term<K: Ord>(acc: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// `(e_i, e_j) ↦ Σ_k c_k e_k`; multiplications and actions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    left: usize,
    right: usize,
    out: usize,
    table: Vec<Vec<(Idx, Scalar)>>,
}

impl BilinearMap {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        BilinearMap {
            left,
            right,
            out,
            table: vec![Vec::new(); left * right],
        }
    }

    /// Builds from `(i, j, k, coefficient)` entries; repeated keys accumulate.
    pub fn from_entries(
        left: usize,
        right: usize,
        out: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= left || j >= right || k >= out {
                return Err(Error::mismatch(format!("entry ({i},{j},{k}) out of range")));
            }
            push_term(&mut acc, (i, j, k), c);
        }
        let mut m = Self::zero(left, right, out);
        for ((i, j, k), c) in acc {
            m.table[i * right + j].push((k as Idx, c));
        }
        Ok(m)
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &[(Idx, Scalar)] {
        &self.table[i * self.right + j]
    }

    /// Canonical `(i, j, k, c)` listing, lexicographic in indices.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        self.table.iter().enumerate().flat_map(move |(ij, v)| {
            let (i, j) = (ij / self.right, ij % self.right);
            v.iter().map(move |(k, c)| (i, j, *k as usize, c))
        })
    }

    pub fn apply(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero(self.out);
        for (i, x) in a.support() {
            for (j, y) in b.support() {
                let xy = x * y;
                for (k, c) in self.get(i, j) {
                    out[*k as usize] += &(c * &xy);
                }
            }
        }
        out
    }

    /// `f ∘ m`.
    pub fn then(&self, f: &SparseMap) -> BilinearMap {
        assert_eq!(f.dim_in(), self.out);
        let mut m = Self::zero(self.left, self.right, f.dim_out());
        for (slot, v) in self.table.iter().enumerate() {
            let mut acc = BTreeMap::new();
            for (k, c) in v {
                for (l, d) in f.column(*k as usize) {
                    push_term(&mut acc, *l, c * d);
                }
            }
            m.table[slot] = acc.into_iter().collect();
        }
        m
    }

    /// `m ∘ (f ⊗ g)`.
    pub fn precompose(&self, f: &SparseMap, g: &SparseMap) -> BilinearMap {
        assert_eq!(f.dim_out(), self.left);
        assert_eq!(g.dim_out(), self.right);
        let mut m = Self::zero(f.dim_in(), g.dim_in(), self.out);
        for i in 0..f.dim_in() {
            for j in 0..g.dim_in() {
                let mut acc = BTreeMap::new();
                for (a, x) in f.column(i) {
                    for (b, y) in g.column(j) {
                        let xy = x * y;
                        for (k, c) in self.get(*a as usize, *b as usize) {
                            push_term(&mut acc, *k, c * &xy);
                        }
                    }
                }
                m.table[i * g.dim_in() + j] = acc.into_iter().collect();
            }
        }
        m
    }

    /// Overwrites the coefficient list for `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: &Vector) {
        self.table[i * self.right + j] = v.support().map(|(k, c)| (k as Idx, c.clone())).collect();
    }
}

impl fmt::Debug for BilinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries()).finish()
    }
}

/// `e_i ↦ Σ c e_j ⊗ e_k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoproductMap {
    dim: usize,
    table: Vec<Vec<(Idx, Idx, Scalar)>>,
}

impl CoproductMap {
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::mismatch(format!(
                    "coproduct entry ({i},{j},{k}) out of range"
                )));
            }
            push_term(&mut acc, (i, j, k), c);
        }
        let mut table = vec![Vec::new(); dim];
        for ((i, j, k), c) in acc {
            table[i].push((j as Idx, k as Idx, c));
        }
        Ok(CoproductMap { dim, table })
    }

    /// Coproduct given by the images of basis vectors.
    pub fn from_images(images: &[TensorElement2]) -> Self {
        let dim = images.len();
        let table = images
            .iter()
            .map(|t| t.iter().map(|([j, k], c)| (*j, *k, c.clone())).collect())
            .collect();
        CoproductMap { dim, table }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[(Idx, Idx, Scalar)] {
        &self.table[i]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        self.table.iter().enumerate().flat_map(|(i, v)| {
            v.iter()
                .map(move |(j, k, c)| (i, *j as usize, *k as usize, c))
        })
    }

    pub fn image(&self, i: usize) -> TensorElement2 {
        let mut t = TensorElement2::zero([self.dim; 2]);
        for (j, k, c) in &self.table[i] {
            t.add_term([*j, *k], c.clone());
        }
        t
    }

    pub fn apply(&self, v: &Vector) -> TensorElement2 {
        let mut t = TensorElement2::zero([self.dim; 2]);
        for (i, x) in v.support() {
            for (j, k, c) in &self.table[i] {
                t.add_term([*j, *k], c * x);
            }
        }
        t
    }

    /// `Δ ∘ f`.
    pub fn precompose(&self, f: &SparseMap) -> CoproductMap {
        let images: Vec<TensorElement2> = (0..f.dim_in())
            .map(|i| {
                let mut t = TensorElement2::zero([self.dim; 2]);
                for (a, x) in f.column(i) {
                    for (j, k, c) in &self.table[*a as usize] {
                        t.add_term([*j, *k], c * x);
                    }
                }
                t
            })
            .collect();
        CoproductMap::from_images(&images)
    }

    /// `(f ⊗ f) ∘ Δ`.
    pub fn then(&self, f: &SparseMap) -> CoproductMap {
        let images: Vec<TensorElement2> = (0..self.dim)
            .map(|i| self.image(i).map_legs(&[f, f]))
            .collect();
        CoproductMap::from_images(&images)
    }
}

impl fmt::Debug for CoproductMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries()).finish()
    }
}

/// Sparse element of a tensor product of `N` spaces; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement<const N: usize> {
    dims: [usize; N],
    coeffs: BTreeMap<[Idx; N], Scalar>,
}

pub type TensorElement2 = TensorElement<2>;
pub type TensorElement3 = TensorElement<3>;

impl<const N: usize> TensorElement<N> {
    pub fn zero(dims: [usize; N]) -> Self {
        TensorElement {
            dims,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        dims: [usize; N],
        terms: impl IntoIterator<Item = ([usize; N], Scalar)>,
    ) -> Result<Self> {
        let mut t = Self::zero(dims);
        for (k, c) in terms {
            if k.iter().zip(&dims).any(|(i, d)| i >= d) {
                return Err(Error::mismatch(format!(
                    "tensor index {k:?} out of range for {dims:?}"
                )));
            }
            t.add_term(k.map(|i| i as Idx), c);
        }
        Ok(t)
    }

    /// Pure tensor of vectors.
    pub fn pure(vs: [&Vector; N]) -> Self {
        let dims = vs.map(|v| v.dim());
        let mut t = Self::zero(dims);
        let mut stack: Vec<([Idx; N], Scalar, usize)> = vec![([0; N], Scalar::one(), 0)];
        while let Some((key, c, leg)) = stack.pop() {
            if leg == N {
                t.add_term(key, c);
                continue;
            }
            for (i, x) in vs[leg].support() {
                let mut k = key;
                k[leg] = i as Idx;
                stack.push((k, &c * x, leg + 1));
            }
        }
        t
    }

    pub fn dims(&self) -> [usize; N] {
        self.dims
    }

    pub fn add_term(&mut self, key: [Idx; N], c: Scalar) {
        push_term(&mut self.coeffs, key, c);
    }

    pub fn get(&self, key: [usize; N]) -> Scalar {
        self.coeffs
            .get(&key.map(|i| i as Idx))
            .cloned()
            .unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[Idx; N], &Scalar)> {
        self.coeffs.iter()
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.clone();
        for (k, c) in &other.coeffs {
            t.add_term(*k, c.clone());
        }
        t
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut t = Self::zero(self.dims);
        for (k, c) in &self.coeffs {
            t.add_term(*k, c * s);
        }
        t
    }

    /// Applies one linear map per leg.
    pub fn map_legs(&self, maps: &[&SparseMap; N]) -> Self {
        let dims = std::array::from_fn(|l| maps[l].dim_out());
        let mut t = Self::zero(dims);
        for (key, c) in &self.coeffs {
            let mut stack: Vec<([Idx; N], Scalar, usize)> = vec![(*key, c.clone(), 0)];
            while let Some((k, c, leg)) = stack.pop() {
                if leg == N {
                    t.add_term(k, c);
                    continue;
                }
                for (i, a) in maps[leg].column(key[leg] as usize) {
                    let mut k2 = k;
                    k2[leg] = *i;
                    stack.push((k2, &c * a, leg + 1));
                }
            }
        }
        t
    }

    /// Applies a map to a single leg, identity elsewhere.
    pub fn map_leg(&self, leg: usize, f: &SparseMap) -> Self {
        let mut dims = self.dims;
        dims[leg] = f.dim_out();
        let mut t = Self::zero(dims);
        for (key, c) in &self.coeffs {
            for (i, a) in f.column(key[leg] as usize) {
                let mut k = *key;
                k[leg] = *i;
                t.add_term(k, c * a);
            }
        }
        t
    }

    /// Leg permutation: leg `l` of the result is leg `perm[l]` of `self`.
    pub fn permute(&self, perm: [usize; N]) -> Self {
        let dims = perm.map(|p| self.dims[p]);
        let mut t = Self::zero(dims);
        for (key, c) in &self.coeffs {
            t.add_term(perm.map(|p| key[p]), c.clone());
        }
        t
    }
}

impl TensorElement2 {
    /// `τ(u) = u^{(2)} ⊗ u^{(1)}`.
    pub fn flip(&self) -> Self {
        self.permute([1, 0])
    }

    /// Contracts one leg with a linear functional, leaving a vector.
    pub fn contract_leg(&self, leg: usize, f: &[Scalar]) -> Vector {
        let mut v = Vector::zero(self.dims[1 - leg]);
        for (k, c) in &self.coeffs {
            let w = &f[k[leg] as usize];
            if !w.is_zero() {
                v[k[1 - leg] as usize] += &(c * w);
            }
        }
        v
    }
}

impl<const N: usize> fmt::Debug for TensorElement<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·{k:?}")?;
        }
        Ok(())
    }
}

/// Componentwise product `(u¹v¹) ⊗ (u²v²)` in `A ⊗ A`; no re-association.
pub fn tensor2_hom_product(
    mult: &BilinearMap,
    u: &TensorElement2,
    v: &TensorElement2,
) -> Result<TensorElement2> {
    tensor_hom_product(mult, u, v)
}

/// Componentwise product `(u¹v¹) ⊗ (u²v²) ⊗ (u³v³)`.
pub fn tensor3_hom_product(
    mult: &BilinearMap,
    u: &TensorElement3,
    v: &TensorElement3,
) -> Result<TensorElement3> {
    tensor_hom_product(mult, u, v)
}

pub fn tensor_hom_product<const N: usize>(
    mult: &BilinearMap,
    u: &TensorElement<N>,
    v: &TensorElement<N>,
) -> Result<TensorElement<N>> {
    let (l, r, o) = mult.dims();
    if u.dims.iter().any(|&d| d != l) || v.dims.iter().any(|&d| d != r) {
        return Err(Error::mismatch(format!(
            "componentwise product of {:?} and {:?} over a {l}x{r} product",
            u.dims, v.dims
        )));
    }
    let mut t = TensorElement::zero([o; N]);
    for (ku, cu) in &u.coeffs {
        for (kv, cv) in &v.coeffs {
            let mut stack: Vec<([Idx; N], Scalar, usize)> = vec![([0; N], cu * cv, 0)];
            while let Some((k, c, leg)) = stack.pop() {
                if leg == N {
                    t.add_term(k, c);
                    continue;
                }
                for (m, a) in mult.get(ku[leg] as usize, kv[leg] as usize) {
                    let mut k2 = k;
                    k2[leg] = *m;
                    stack.push((k2, &c * a, leg + 1));
                }
            }
        }
    }
    Ok(t)
}

/// Cached integer powers `α^p` for `|p| ≤ window`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphaPowers {
    window: i32,
    nonneg: Vec<SparseMap>,
    neg: Option<Vec<SparseMap>>,
}

pub const DEFAULT_WINDOW: i32 = 8;

impl AlphaPowers {
    pub fn new(alpha: &LinearMap, window: i32) -> Result<Self> {
        if !alpha.is_square() {
            return Err(Error::mismatch("structure map must be square"));
        }
        let a = SparseMap::from_linear(alpha);
        let mut nonneg = vec![SparseMap::identity(alpha.rows())];
        for p in 1..=window as usize {
            nonneg.push(a.compose(&nonneg[p - 1]));
        }
        let neg = match alpha.inverse() {
            Ok(inv) => {
                let b = SparseMap::from_linear(&inv);
                let mut v = vec![SparseMap::identity(alpha.rows())];
                for p in 1..=window as usize {
                    v.push(b.compose(&v[p - 1]));
                }
                Some(v)
            }
            Err(_) => None,
        };
        Ok(AlphaPowers {
            window,
            nonneg,
            neg,
        })
    }

    pub fn window(&self) -> i32 {
        self.window
    }

    pub fn is_invertible(&self) -> bool {
        self.neg.is_some()
    }

    pub fn alpha(&self) -> &SparseMap {
        &self.nonneg[1.min(self.nonneg.len() - 1)]
    }

    pub fn get(&self, p: i32) -> Result<&SparseMap> {
        if p.abs() > self.window {
            return Err(Error::WindowExceeded {
                power: p,
                window: self.window,
            });
        }
        if p >= 0 {
            Ok(&self.nonneg[p as usize])
        } else {
            self.neg
                .as_ref()
                .map(|v| &v[(-p) as usize])
                .ok_or(Error::AlphaNotInvertible)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.alpha().is_identity()
    }
}

impl fmt::Debug for AlphaPowers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlphaPowers")
            .field("window", &self.window)
            .field("alpha", self.alpha())
            .finish()
    }
}

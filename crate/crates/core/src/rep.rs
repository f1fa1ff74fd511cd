//! Representation categories `Rep^{i,j}` on concrete modules: tensor actions,
//! associativity, unit and braiding constraints, and the comparison functors
//! between categories with different indices or a twisted coproduct.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::axioms::run;
use crate::error::{Error, Result};
use crate::exact::{
    apply_sweedler, Context, Expr, Identity, LinearMap, Multi, Scalar, SpaceId, SparseMap,
    TensorElement2, Vector,
};
use crate::quasitriangular::{twist_rmatrix, RMatrix};
use crate::report::{CheckRecord, VerificationReport};
use crate::structures::{Flavor, HomBialgebra, HomModule};
use crate::twist::{build_twisted_bialgebra, Twist};

/// Indices and flavor of a representation category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RepConfig {
    pub i: i32,
    pub j: i32,
    pub flavor: Flavor,
}

impl fmt::Display for RepConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.flavor, self.i, self.j)
    }
}

impl RepConfig {
    pub fn new(i: i32, j: i32, flavor: Flavor) -> Self {
        RepConfig { i, j, flavor }
    }

    fn sign(&self) -> i32 {
        match self.flavor {
            Flavor::Monoidal => 1,
            Flavor::Plain => -1,
        }
    }

    /// Powers applied to the outer factors by the associator.
    pub fn assoc_powers(&self) -> (i32, i32) {
        (-self.i + self.sign(), self.j - self.sign())
    }

    pub fn left_unit_power(&self) -> i32 {
        -self.j + self.sign()
    }

    pub fn right_unit_power(&self) -> i32 {
        -self.i + self.sign()
    }

    /// Largest `|p|` such that `α^p` appears in a constraint of this category.
    pub fn required_window(&self) -> i32 {
        [
            self.i.abs(),
            self.j.abs(),
            (self.i - self.j).abs() + 1,
            self.i.abs() + 1,
            self.j.abs() + 1,
        ]
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}

/// An object built from leaf modules by tensor products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obj {
    Leaf(SpaceId),
    Tensor(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn t(a: Obj, b: Obj) -> Obj {
        Obj::Tensor(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> Vec<SpaceId> {
        match self {
            Obj::Leaf(s) => vec![*s],
            Obj::Tensor(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Obj::Leaf(_) => 1,
            Obj::Tensor(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// An expression with a known number of legs.
#[derive(Clone)]
pub struct Legs {
    pub e: Expr,
    pub n: usize,
}

impl Legs {
    /// The inputs `0..k`, one per leaf of `x`, tensored together.
    pub fn inputs(x: &Obj, first_input: usize) -> Legs {
        let n = x.len();
        Legs {
            e: Expr::tensor_all((first_input..first_input + n).map(Expr::input)),
            n,
        }
    }

    fn alpha_range(mut self, base: usize, len: usize, p: i32) -> Legs {
        if p != 0 {
            for l in base..base + len {
                self.e = self.e.alpha(l, p);
            }
        }
        self
    }

    /// Places a two-leg constant in front, at legs `0, 1`.
    fn prepend(self, c: &Arc<Multi>) -> Legs {
        Legs {
            e: Expr::Const(c.clone()).tensor(self.e),
            n: self.n + 2,
        }
    }

    /// Leg `l` of the result is leg `order[l]` of `self`.
    fn permute(self, order: &[usize]) -> Legs {
        Legs {
            e: self.e.permute(order),
            n: self.n,
        }
    }

    pub fn map(mut self, leg: usize, f: &Arc<SparseMap>, to: SpaceId) -> Legs {
        self.e = self.e.map(leg, f.clone(), to);
        self
    }
}

/// `Rep^{i,j}` of one algebra, as a builder of formulas.
#[derive(Clone)]
pub struct Category {
    pub alg: SpaceId,
    pub unit: SpaceId,
    pub cfg: RepConfig,
    /// `R` and `R⁻¹` as constants in `alg ⊗ alg`.
    pub braiding: Option<(Arc<Multi>, Arc<Multi>)>,
}

impl Category {
    pub fn new(alg: SpaceId, unit: SpaceId, cfg: RepConfig) -> Self {
        Category {
            alg,
            unit,
            cfg,
            braiding: None,
        }
    }

    pub fn with_rmatrix(mut self, r: &TensorElement2, r_inv: &TensorElement2) -> Self {
        let a = self.alg;
        self.braiding = Some((
            Arc::new(Multi::from_tensor([a, a], r)),
            Arc::new(Multi::from_tensor([a, a], r_inv)),
        ));
        self
    }

    /// Acts with the algebra element at leg `p` on the object `x` at legs `p+1..`.
    pub fn act(&self, l: Legs, p: usize, x: &Obj) -> Legs {
        match x {
            Obj::Leaf(_) => Legs {
                e: l.e.act(p, p + 1),
                n: l.n - 1,
            },
            Obj::Tensor(a, b) => {
                let e = l.e.comul(p).alpha(p, self.cfg.i).alpha(p + 1, self.cfg.j);
                let n = l.n + 1;
                let e = e.move_leg(n, p + 1, p + a.len() + 1);
                let l = self.act(Legs { e, n }, p, a);
                self.act(l, p + a.len(), b)
            }
        }
    }

    /// `α_x^p` on the legs of `x` at `base`.
    pub fn alpha(&self, l: Legs, base: usize, x: &Obj, p: i32) -> Legs {
        l.alpha_range(base, x.len(), p)
    }

    /// `a_{x,y,z}: (x⊗y)⊗z → x⊗(y⊗z)`, or its inverse.
    pub fn assoc(&self, l: Legs, base: usize, x: &Obj, y: &Obj, z: &Obj, inverse: bool) -> Legs {
        let (p, q) = self.cfg.assoc_powers();
        let s = if inverse { -1 } else { 1 };
        l.alpha_range(base, x.len(), s * p)
            .alpha_range(base + x.len() + y.len(), z.len(), s * q)
    }

    /// `l_x: k⊗x → x`.
    pub fn left_unit(&self, l: Legs, base: usize, x: &Obj) -> Legs {
        let l = Legs {
            e: l.e.drop_leg(base),
            n: l.n - 1,
        };
        l.alpha_range(base, x.len(), self.cfg.left_unit_power())
    }

    pub fn left_unit_inv(&self, l: Legs, base: usize, x: &Obj) -> Legs {
        let l = l.alpha_range(base, x.len(), -self.cfg.left_unit_power());
        Legs {
            e: l.e.insert(base, self.unit),
            n: l.n + 1,
        }
    }

    /// `r_x: x⊗k → x`.
    pub fn right_unit(&self, l: Legs, base: usize, x: &Obj) -> Legs {
        let l = Legs {
            e: l.e.drop_leg(base + x.len()),
            n: l.n - 1,
        };
        l.alpha_range(base, x.len(), self.cfg.right_unit_power())
    }

    pub fn right_unit_inv(&self, l: Legs, base: usize, x: &Obj) -> Legs {
        let l = l.alpha_range(base, x.len(), -self.cfg.right_unit_power());
        Legs {
            e: l.e.insert(base + x.len(), self.unit),
            n: l.n + 1,
        }
    }

    /// Prepends a two-leg constant with powers `(p0, p1)` and moves its legs in
    /// front of the two blocks at `base` of lengths `la`, `lb`, swapping the blocks
    /// when `swap` is set. Leaves `c¹, A, c², B` (or `c¹, B, c², A`).
    #[allow(clippy::too_many_arguments)]
    fn spread(
        &self,
        l: Legs,
        c: &Arc<Multi>,
        powers: (i32, i32),
        base: usize,
        la: usize,
        lb: usize,
        swap: bool,
    ) -> Legs {
        let l = l.prepend(c);
        let e = l.e.alpha(0, powers.0).alpha(1, powers.1);
        let n = l.n;
        let a: Vec<usize> = (base + 2..base + 2 + la).collect();
        let b: Vec<usize> = (base + 2 + la..base + 2 + la + lb).collect();
        let (first, second) = if swap { (b, a) } else { (a, b) };
        let mut order: Vec<usize> = (2..base + 2).collect();
        order.push(0);
        order.extend(first);
        order.push(1);
        order.extend(second);
        order.extend(base + 2 + la + lb..n);
        Legs { e, n }.permute(&order)
    }

    fn rmatrix(&self) -> (&Arc<Multi>, &Arc<Multi>) {
        let (r, s) = self.braiding.as_ref().expect("category has no braiding");
        (r, s)
    }

    /// `c_{x,y}(m⊗n) = α^i(R²)·α^{i-j-1}(n) ⊗ α^j(R¹)·α^{j-i-1}(m)`.
    pub fn braid(&self, l: Legs, base: usize, x: &Obj, y: &Obj) -> Legs {
        let (i, j) = (self.cfg.i, self.cfg.j);
        let (r, _) = self.rmatrix();
        let l =
            l.alpha_range(base, x.len(), j - i - 1)
                .alpha_range(base + x.len(), y.len(), i - j - 1);
        // R¹ ⊗ R² in front, then R² y R¹ x.
        let l = self.spread(l, r, (j, i), base, x.len(), y.len(), true);
        let order = swap_first_two_after(l.n, base, y.len());
        let l = l.permute(&order);
        let l = self.act(l, base, y);
        self.act(l, base + y.len(), x)
    }

    /// Inverse of [`Self::braid`]: `y⊗x → x⊗y`,
    /// `n⊗m ↦ α^i(S¹)·α^{i-j-1}(m) ⊗ α^j(S²)·α^{j-i-1}(n)` with `S = R⁻¹`.
    pub fn braid_inv(&self, l: Legs, base: usize, x: &Obj, y: &Obj) -> Legs {
        let (i, j) = (self.cfg.i, self.cfg.j);
        let (_, s) = self.rmatrix();
        let l =
            l.alpha_range(base, y.len(), j - i - 1)
                .alpha_range(base + y.len(), x.len(), i - j - 1);
        let l = self.spread(l, s, (i, j), base, y.len(), x.len(), true);
        let l = self.act(l, base, x);
        self.act(l, base + x.len(), y)
    }
}

/// After [`Category::spread`] produced `c¹, B, c², A` at `base`, reorders to
/// `c², B, c¹, A`.
fn swap_first_two_after(n: usize, base: usize, lb: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.swap(base, base + lb + 1);
    order
}

/// `m⊗′n ↦ α^{i-i′}(m) ⊗ α^{j-j′}(n)` from `from` to `to`.
pub fn functor_f2(l: Legs, base: usize, x: &Obj, y: &Obj, from: RepConfig, to: RepConfig) -> Legs {
    l.alpha_range(base, x.len(), to.i - from.i)
        .alpha_range(base + x.len(), y.len(), to.j - from.j)
}

/// `m⊗̄n ↦ α^i(ϱ¹)·m ⊗ α^j(ϱ²)·n`, acting in the source category `src`.
#[allow(clippy::too_many_arguments)]
pub fn functor_g2(
    l: Legs,
    base: usize,
    x: &Obj,
    y: &Obj,
    src: &Category,
    rho: &Arc<Multi>,
    i: i32,
    j: i32,
) -> Legs {
    let l = src.spread(l, rho, (i, j), base, x.len(), y.len(), false);
    let l = src.act(l, base, x);
    src.act(l, base + x.len(), y)
}

/// A named module participating in the checks.
#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub space: SpaceId,
}

/// The trivial, regular, and seeded random modules of `h`.
pub fn standard_modules(h: &HomBialgebra, seed: u64) -> Result<Vec<HomModule>> {
    Ok(vec![
        HomModule::trivial(h),
        HomModule::regular(h)?,
        HomModule::random(h, seed)?,
    ])
}

/// Spaces for the given algebras and modules; every algebra acts on every module
/// by the module's action tensor. The first module must be the trivial one; it
/// doubles as the unit object.
pub struct Setup {
    pub ctx: Context,
    pub algs: Vec<SpaceId>,
    pub members: Vec<Member>,
    pub modules: Vec<HomModule>,
    /// Test endomorphisms of each module, see [`test_morphisms`].
    pub morphisms: Vec<Vec<(String, Arc<SparseMap>)>>,
}

impl Setup {
    pub fn new(algs: &[&HomBialgebra], modules: &[HomModule]) -> Result<Self> {
        if modules.first().map(HomModule::dim) != Some(1) {
            return Err(Error::precondition(
                "the first module must be the one-dimensional unit object",
            ));
        }
        let mut ctx = Context::new();
        let alg_ids: Vec<SpaceId> = algs.iter().map(|h| ctx.add_space(h.space())).collect();
        let mut members = Vec::new();
        for (k, m) in modules.iter().enumerate() {
            let mut sp = m.space();
            sp.name = format!("{}{k}", m.name);
            let id = ctx.add_space(sp);
            for &a in &alg_ids {
                ctx.add_action(a, id, m.action_arc())?;
            }
            members.push(Member {
                name: m.name.clone(),
                space: id,
            });
        }
        let morphisms = modules
            .iter()
            .map(|m| {
                Ok(test_morphisms(algs[0], m)?
                    .into_iter()
                    .map(|(n, f)| (n, Arc::new(SparseMap::from_linear(&f))))
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(Setup {
            ctx,
            algs: alg_ids,
            members,
            modules: modules.to_vec(),
            morphisms,
        })
    }

    pub fn unit(&self) -> SpaceId {
        self.members[0].space
    }

    pub fn category(&self, alg: usize, cfg: RepConfig) -> Category {
        Category::new(self.algs[alg], self.unit(), cfg)
    }

    fn leaf(&self, k: usize) -> Obj {
        Obj::Leaf(self.members[k].space)
    }

    fn names(&self, ks: &[usize]) -> String {
        ks.iter()
            .map(|&k| self.members[k].name.as_str())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// `f(h·x) = h·f(x)` for `f: x → y`, with `f` given as a formula transformer at base 0.
fn linearity(
    id: String,
    anchor: &str,
    cat_x: &Category,
    cat_y: &Category,
    x: &Obj,
    y: &Obj,
    f: impl Fn(Legs) -> Legs,
) -> Identity {
    let h = Expr::input(0);
    let xin = Legs::inputs(x, 1);
    let acted = cat_x.act(
        Legs {
            e: h.clone().tensor(xin.e.clone()),
            n: xin.n + 1,
        },
        0,
        x,
    );
    let lhs = f(acted);
    let fx = f(xin);
    let h = if cat_x.alg == cat_y.alg {
        h
    } else {
        h.recast(0, cat_y.alg)
    };
    let rhs = cat_y.act(
        Legs {
            e: h.tensor(fx.e),
            n: fx.n + 1,
        },
        0,
        y,
    );
    let mut inputs = vec![vec![cat_x.alg]];
    inputs.extend(x.leaves().into_iter().map(|s| vec![s]));
    Identity::new(id, anchor, inputs, lhs.e, rhs.e)
}

/// `f∘α_x = α_y∘f`.
fn alpha_compatible(
    id: String,
    anchor: &str,
    x: &Obj,
    y: &Obj,
    f: impl Fn(Legs) -> Legs,
) -> Identity {
    let xin = Legs::inputs(x, 0);
    let lhs = f(xin.clone().alpha_range(0, x.len(), 1));
    let rhs = f(xin).alpha_range(0, y.len(), 1);
    Identity::new(
        id,
        anchor,
        x.leaves().into_iter().map(|s| vec![s]).collect(),
        lhs.e,
        rhs.e,
    )
}

/// Two composites `x → y` agree.
fn same_map(
    id: String,
    anchor: &str,
    x: &Obj,
    f: impl Fn(Legs) -> Legs,
    g: impl Fn(Legs) -> Legs,
) -> Identity {
    let xin = Legs::inputs(x, 0);
    Identity::new(
        id,
        anchor,
        x.leaves().into_iter().map(|s| vec![s]).collect(),
        f(xin.clone()).e,
        g(xin).e,
    )
}

/// Module axioms of a tensor product object.
fn tensor_module_identities(cat: &Category, x: &Obj, tag: &str) -> Vec<Identity> {
    let a = cat.alg;
    let mut leaves: Vec<Vec<SpaceId>> = x.leaves().into_iter().map(|s| vec![s]).collect();
    let k = x.len();
    let one = |first| Legs::inputs(x, first);
    let mut two = vec![vec![a], vec![a]];
    two.extend(leaves.iter().cloned());
    let mut single = vec![vec![a]];
    single.append(&mut leaves);
    let hx = |first: usize| {
        let xin = one(first + 1);
        Legs {
            e: Expr::input(first).tensor(xin.e),
            n: k + 1,
        }
    };
    let ax = hx(0);
    let eq_lhs = cat.act(ax.clone(), 0, x).alpha_range(0, k, 1);
    let eq_rhs = cat.act(
        Legs {
            e: ax.e.alpha(0, 1),
            n: k + 1,
        }
        .alpha_range(1, k, 1),
        0,
        x,
    );
    // α(b)·(b′·x) = (bb′)·α_x(x)
    let bbx = Legs {
        e: Expr::input(0).tensor(hx(1).e),
        n: k + 2,
    };
    let inner = cat.act(
        Legs {
            e: bbx.e.clone().alpha(0, 1),
            n: k + 2,
        },
        1,
        x,
    );
    let as_lhs = cat.act(inner, 0, x);
    let prod = Legs {
        e: bbx.e.mul(0, 1),
        n: k + 1,
    }
    .alpha_range(1, k, 1);
    let as_rhs = cat.act(prod, 0, x);
    let xin = one(0);
    let un_lhs = cat.act(
        Legs {
            e: Expr::unit(a).tensor(xin.e.clone()),
            n: k + 1,
        },
        0,
        x,
    );
    let un_rhs = xin.alpha_range(0, k, 1);
    vec![
        Identity::new(
            format!("{tag}.module-alpha"),
            "α_X(h·x) = α(h)·α_X(x)",
            single.clone(),
            eq_lhs.e,
            eq_rhs.e,
        ),
        Identity::new(
            format!("{tag}.module-assoc"),
            "α(b)·(b′·x) = (bb′)·α_X(x)",
            two,
            as_lhs.e,
            as_rhs.e,
        ),
        Identity::new(
            format!("{tag}.module-unit"),
            "1·x = α_X(x)",
            single.into_iter().skip(1).collect(),
            un_lhs.e,
            un_rhs.e,
        ),
    ]
}

/// How much of the module set to sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scope {
    /// Include every quadruple in the pentagon rather than only the diagonal ones.
    pub all_quadruples: bool,
}

impl Default for Scope {
    fn default() -> Self {
        Scope {
            all_quadruples: true,
        }
    }
}

fn tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..m).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// Endomorphisms of each module used for naturality: `2·id` and up to three
/// basis elements of the module endomorphisms commuting with `α_M`.
pub fn test_morphisms(h: &HomBialgebra, m: &HomModule) -> Result<Vec<(String, LinearMap)>> {
    let n = m.dim();
    let mut out = vec![(
        "double".to_string(),
        LinearMap::identity(n).scale(&Scalar::from_int(2)),
    )];
    for (k, f) in module_endomorphisms(h, m)?.into_iter().enumerate().take(3) {
        out.push((format!("hom{k}"), f));
    }
    Ok(out)
}

/// Basis of `{f : f(h·m) = h·f(m), f∘α_M = α_M∘f}`.
pub fn module_endomorphisms(h: &HomBialgebra, m: &HomModule) -> Result<Vec<LinearMap>> {
    let n = m.dim();
    let unknowns = n * n;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    // f[(r, c)] is unknown r * n + c.
    let act = |hi: usize| -> LinearMap {
        let mut a = LinearMap::zero(n, n);
        for c in 0..n {
            for (r, v) in m.action().get(hi, c) {
                a[(*r as usize, c)] = v.clone();
            }
        }
        a
    };
    let mut commute_with = |g: &LinearMap| {
        // (f g - g f)[(r, c)] = Σ_k f[r,k] g[k,c] - g[r,k] f[k,c]
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Scalar::zero(); unknowns];
                for k in 0..n {
                    row[r * n + k] += &g[(k, c)];
                    row[k * n + c] -= &g[(r, k)];
                }
                rows.push(row);
            }
        }
    };
    for hi in 0..h.dim() {
        commute_with(&act(hi));
    }
    commute_with(m.alpha());
    let sys = LinearMap::from_rows(rows)?;
    Ok(sys
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut f = LinearMap::zero(n, n);
            for r in 0..n {
                for c in 0..n {
                    f[(r, c)] = v[r * n + c].clone();
                }
            }
            f
        })
        .collect())
}

/// Coherence checks of the monoidal structure of one category over the module set.
pub fn monoidal_identities(setup: &Setup, cat: &Category, scope: Scope) -> Vec<Identity> {
    let m = setup.members.len();
    let c = cat.cfg;
    let mut ids = Vec::new();
    let leaf = |k| setup.leaf(k);
    let k_obj = Obj::Leaf(setup.unit());

    for t in tuples(m, 2) {
        let x = Obj::t(leaf(t[0]), leaf(t[1]));
        ids.extend(tensor_module_identities(
            cat,
            &x,
            &format!("{c}.tensor[{}]", setup.names(&t)),
        ));
    }

    for t in tuples(m, 3) {
        let (x, y, z) = (leaf(t[0]), leaf(t[1]), leaf(t[2]));
        let src = Obj::t(Obj::t(x.clone(), y.clone()), z.clone());
        let dst = Obj::t(x.clone(), Obj::t(y.clone(), z.clone()));
        let names = setup.names(&t);
        let fwd = |l| cat.assoc(l, 0, &x, &y, &z, false);
        let bwd = |l| cat.assoc(l, 0, &x, &y, &z, true);
        ids.push(linearity(
            format!("{c}.assoc-linear[{names}]"),
            "a(h·x) = h·a(x)",
            cat,
            cat,
            &src,
            &dst,
            fwd,
        ));
        ids.push(alpha_compatible(
            format!("{c}.assoc-alpha[{names}]"),
            "a∘α = α∘a",
            &src,
            &dst,
            fwd,
        ));
        ids.push(same_map(
            format!("{c}.assoc-inverse[{names}]"),
            "a⁻¹∘a = id",
            &src,
            |l| bwd(fwd(l)),
            |l| l,
        ));
        ids.push(same_map(
            format!("{c}.assoc-inverse-right[{names}]"),
            "a∘a⁻¹ = id",
            &dst,
            |l| fwd(bwd(l)),
            |l| l,
        ));
    }

    for k in 0..m {
        let x = leaf(k);
        let name = &setup.members[k].name;
        let kx = Obj::t(k_obj.clone(), x.clone());
        let xk = Obj::t(x.clone(), k_obj.clone());
        ids.push(linearity(
            format!("{c}.left-unit-linear[{name}]"),
            "l(h·x) = h·l(x)",
            cat,
            cat,
            &kx,
            &x,
            |l| cat.left_unit(l, 0, &x),
        ));
        ids.push(linearity(
            format!("{c}.right-unit-linear[{name}]"),
            "r(h·x) = h·r(x)",
            cat,
            cat,
            &xk,
            &x,
            |l| cat.right_unit(l, 0, &x),
        ));
        ids.push(linearity(
            format!("{c}.left-unit-inverse-linear[{name}]"),
            "l⁻¹(h·x) = h·l⁻¹(x)",
            cat,
            cat,
            &x,
            &kx,
            |l| cat.left_unit_inv(l, 0, &x),
        ));
        ids.push(same_map(
            format!("{c}.left-unit-inverse[{name}]"),
            "l⁻¹∘l = id",
            &kx,
            |l| cat.left_unit_inv(cat.left_unit(l, 0, &x), 0, &x),
            |l| l,
        ));
        ids.push(same_map(
            format!("{c}.left-unit-inverse-right[{name}]"),
            "l∘l⁻¹ = id",
            &x,
            |l| cat.left_unit(cat.left_unit_inv(l, 0, &x), 0, &x),
            |l| l,
        ));
        ids.push(same_map(
            format!("{c}.right-unit-inverse[{name}]"),
            "r⁻¹∘r = id",
            &xk,
            |l| cat.right_unit_inv(cat.right_unit(l, 0, &x), 0, &x),
            |l| l,
        ));
        ids.push(same_map(
            format!("{c}.right-unit-inverse-right[{name}]"),
            "r∘r⁻¹ = id",
            &x,
            |l| cat.right_unit(cat.right_unit_inv(l, 0, &x), 0, &x),
            |l| l,
        ));
        ids.push(alpha_compatible(
            format!("{c}.left-unit-alpha[{name}]"),
            "l∘α = α∘l",
            &kx,
            &x,
            |l| cat.left_unit(l, 0, &x),
        ));
        ids.push(alpha_compatible(
            format!("{c}.right-unit-alpha[{name}]"),
            "r∘α = α∘r",
            &xk,
            &x,
            |l| cat.right_unit(l, 0, &x),
        ));
    }

    let quads = if scope.all_quadruples {
        tuples(m, 4)
    } else {
        (0..m).map(|k| vec![k; 4]).collect()
    };
    for t in quads {
        let (a, b, cc, d) = (leaf(t[0]), leaf(t[1]), leaf(t[2]), leaf(t[3]));
        let src = Obj::t(Obj::t(Obj::t(a.clone(), b.clone()), cc.clone()), d.clone());
        let ab = Obj::t(a.clone(), b.clone());
        let cd = Obj::t(cc.clone(), d.clone());
        let bc = Obj::t(b.clone(), cc.clone());
        let lhs = |l| {
            let l = cat.assoc(l, 0, &ab, &cc, &d, false);
            cat.assoc(l, 0, &a, &b, &cd, false)
        };
        let rhs = |l| {
            let l = cat.assoc(l, 0, &a, &b, &cc, false);
            let l = cat.assoc(l, 0, &a, &bc, &d, false);
            cat.assoc(l, a.len(), &b, &cc, &d, false)
        };
        ids.push(same_map(
            format!("{c}.pentagon[{}]", setup.names(&t)),
            "a∘a = (id⊗a)∘a∘(a⊗id)",
            &src,
            lhs,
            rhs,
        ));
    }

    for t in tuples(m, 2) {
        let (x, y) = (leaf(t[0]), leaf(t[1]));
        let src = Obj::t(Obj::t(x.clone(), k_obj.clone()), y.clone());
        let lhs = |l| {
            let l = cat.assoc(l, 0, &x, &k_obj, &y, false);
            cat.left_unit(l, x.len(), &y)
        };
        let rhs = |l| cat.right_unit(l, 0, &x);
        ids.push(same_map(
            format!("{c}.triangle[{}]", setup.names(&t)),
            "(id⊗l)∘a = r⊗id",
            &src,
            lhs,
            rhs,
        ));
    }

    for k in 0..m {
        let x = leaf(k);
        let sp = setup.members[k].space;
        for (fname, f) in &setup.morphisms[k] {
            let tag = format!("{}:{fname}", setup.members[k].name);
            let kx = Obj::t(k_obj.clone(), x.clone());
            let xk = Obj::t(x.clone(), k_obj.clone());
            ids.push(linearity(
                format!("{c}.morphism-linear[{tag}]"),
                "f(h·m) = h·f(m)",
                cat,
                cat,
                &x,
                &x,
                |l| l.map(0, f, sp),
            ));
            ids.push(same_map(
                format!("{c}.left-unit-natural[{tag}]"),
                "l∘(id⊗f) = f∘l",
                &kx,
                |l| cat.left_unit(l.map(1, f, sp), 0, &x),
                |l| cat.left_unit(l, 0, &x).map(0, f, sp),
            ));
            ids.push(same_map(
                format!("{c}.right-unit-natural[{tag}]"),
                "r∘(f⊗id) = f∘r",
                &xk,
                |l| cat.right_unit(l.map(0, f, sp), 0, &x),
                |l| cat.right_unit(l, 0, &x).map(0, f, sp),
            ));
            for slot in 0..3 {
                let src = Obj::t(Obj::t(x.clone(), x.clone()), x.clone());
                ids.push(same_map(
                    format!("{c}.assoc-natural[{tag}@{slot}]"),
                    "a∘((f⊗g)⊗h) = (f⊗(g⊗h))∘a",
                    &src,
                    |l| cat.assoc(l.map(slot, f, sp), 0, &x, &x, &x, false),
                    |l| cat.assoc(l, 0, &x, &x, &x, false).map(slot, f, sp),
                ));
            }
        }
    }

    ids
}

/// Checks of a braided category that involve the braiding.
pub fn braided_identities(setup: &Setup, cat: &Category) -> Vec<Identity> {
    let m = setup.members.len();
    let c = cat.cfg;
    let mut ids = Vec::new();
    let leaf = |k| setup.leaf(k);
    for k in 0..m {
        let x = leaf(k);
        let sp = setup.members[k].space;
        for (fname, f) in &setup.morphisms[k] {
            let tag = format!("{}:{fname}", setup.members[k].name);
            for other in 0..m {
                let y = leaf(other);
                let xy = Obj::t(x.clone(), y.clone());
                ids.push(same_map(
                    format!("{c}.braiding-natural[{tag},{}]", setup.members[other].name),
                    "c∘(f⊗id) = (id⊗f)∘c",
                    &xy,
                    |l| cat.braid(l.map(0, f, sp), 0, &x, &y),
                    |l| cat.braid(l, 0, &x, &y).map(y.len(), f, sp),
                ));
            }
        }
    }
    {
        for t in tuples(m, 2) {
            let (x, y) = (leaf(t[0]), leaf(t[1]));
            let xy = Obj::t(x.clone(), y.clone());
            let yx = Obj::t(y.clone(), x.clone());
            let names = setup.names(&t);
            ids.push(linearity(
                format!("{c}.braiding-linear[{names}]"),
                "c(h·x) = h·c(x)",
                cat,
                cat,
                &xy,
                &yx,
                |l| cat.braid(l, 0, &x, &y),
            ));
            ids.push(alpha_compatible(
                format!("{c}.braiding-alpha[{names}]"),
                "c∘α = α∘c",
                &xy,
                &yx,
                |l| cat.braid(l, 0, &x, &y),
            ));
            ids.push(same_map(
                format!("{c}.braiding-inverse[{names}]"),
                "c′∘c = id",
                &xy,
                |l| cat.braid_inv(cat.braid(l, 0, &x, &y), 0, &x, &y),
                |l| l,
            ));
            ids.push(same_map(
                format!("{c}.braiding-inverse-right[{names}]"),
                "c∘c′ = id",
                &yx,
                |l| cat.braid(cat.braid_inv(l, 0, &x, &y), 0, &x, &y),
                |l| l,
            ));
        }
        for t in tuples(m, 3) {
            let (x, y, z) = (leaf(t[0]), leaf(t[1]), leaf(t[2]));
            let names = setup.names(&t);
            let yz = Obj::t(y.clone(), z.clone());
            let xy = Obj::t(x.clone(), y.clone());
            // a_{y,z,x} ∘ c_{x,y⊗z} ∘ a_{x,y,z} = (id_y⊗c_{x,z}) ∘ a_{y,x,z} ∘ (c_{x,y}⊗id_z)
            let src = Obj::t(xy.clone(), z.clone());
            ids.push(same_map(
                format!("{c}.hexagon[{names}]"),
                "a∘c∘a = (id⊗c)∘a∘(c⊗id)",
                &src,
                |l| {
                    let l = cat.assoc(l, 0, &x, &y, &z, false);
                    let l = cat.braid(l, 0, &x, &yz);
                    cat.assoc(l, 0, &y, &z, &x, false)
                },
                |l| {
                    let l = cat.braid(l, 0, &x, &y);
                    let l = cat.assoc(l, 0, &y, &x, &z, false);
                    cat.braid(l, y.len(), &x, &z)
                },
            ));
            // a⁻¹_{z,x,y} ∘ c_{x⊗y,z} ∘ a⁻¹_{x,y,z} = (c_{x,z}⊗id_y) ∘ a⁻¹_{x,z,y} ∘ (id_x⊗c_{y,z})
            let src = Obj::t(x.clone(), yz.clone());
            ids.push(same_map(
                format!("{c}.hexagon-inverse[{names}]"),
                "a⁻¹∘c∘a⁻¹ = (c⊗id)∘a⁻¹∘(id⊗c)",
                &src,
                |l| {
                    let l = cat.assoc(l, 0, &x, &y, &z, true);
                    let l = cat.braid(l, 0, &xy, &z);
                    cat.assoc(l, 0, &z, &x, &y, true)
                },
                |l| {
                    let l = cat.braid(l, x.len(), &y, &z);
                    let l = cat.assoc(l, 0, &x, &z, &y, true);
                    cat.braid(l, 0, &x, &z)
                },
            ));
        }
    }
    ids
}

/// Checks that the powers needed by `cfg` fit in the window of `h`.
pub fn require_window(h: &HomBialgebra, cfg: RepConfig) -> Result<()> {
    let need = cfg.required_window();
    if need > h.window() {
        return Err(Error::WindowExceeded {
            power: need,
            window: h.window(),
        });
    }
    Ok(())
}

fn rmatrix_category(
    setup: &Setup,
    alg: usize,
    cfg: RepConfig,
    r: Option<(&TensorElement2, &TensorElement2)>,
) -> Category {
    let cat = setup.category(alg, cfg);
    match r {
        Some((r, s)) => cat.with_rmatrix(r, s),
        None => cat,
    }
}

/// Coherence of `Rep^{i,j}(h)` over the modules, braided when an R-matrix is given.
pub fn check_category(
    h: &HomBialgebra,
    modules: &[HomModule],
    r: Option<(&TensorElement2, &TensorElement2)>,
    cfg: RepConfig,
    scope: Scope,
) -> Result<VerificationReport> {
    if h.flavor() != cfg.flavor {
        return Err(Error::FlavorMismatch(format!(
            "{} is {}, category is {}",
            h.name(),
            h.flavor(),
            cfg.flavor
        )));
    }
    require_window(h, cfg)?;
    let setup = Setup::new(&[h], modules)?;
    let cat = rmatrix_category(&setup, 0, cfg, r);
    let mut ids = monoidal_identities(&setup, &cat, scope);
    if cat.braiding.is_some() {
        ids.extend(braided_identities(&setup, &cat));
    }
    Ok(run(&setup.ctx, &ids))
}

/// Monoidal (and braided) functor squares for `F: Rep^{from} → Rep^{to}`, the
/// identity on objects with `F₂` as in [`functor_f2`]. Both categories are built
/// on algebra 0 of `setup`.
pub fn functor_f_identities(setup: &Setup, from: &Category, to: &Category) -> Vec<Identity> {
    // F₂(M,N): M ⊗_to N → M ⊗_from N, so `to` is the primed category.
    let (src, dst) = (from, to);
    let (fc, tc) = (from.cfg, to.cfg);
    let braided = src.braiding.is_some() && dst.braiding.is_some();
    let tag = format!("F[{fc}→{tc}]");
    let m = setup.members.len();
    let leaf = |k| setup.leaf(k);
    let k_obj = Obj::Leaf(setup.unit());
    let f2 = |l, base, x: &Obj, y: &Obj| functor_f2(l, base, x, y, tc, fc);
    let mut ids = Vec::new();
    for t in tuples(m, 2) {
        let (x, y) = (leaf(t[0]), leaf(t[1]));
        let xy = Obj::t(x.clone(), y.clone());
        let names = setup.names(&t);
        ids.push(linearity(
            format!("{tag}.f2-linear[{names}]"),
            "F₂(h·′x) = h·F₂(x)",
            dst,
            src,
            &xy,
            &xy,
            |l| f2(l, 0, &x, &y),
        ));
        ids.push(same_map(
            format!("{tag}.f2-inverse[{names}]"),
            "F₂⁻¹∘F₂ = id",
            &xy,
            |l| functor_f2(f2(l, 0, &x, &y), 0, &x, &y, fc, tc),
            |l| l,
        ));
        if braided {
            ids.push(same_map(
                format!("{tag}.braided[{names}]"),
                "F(c)∘F₂ = F₂∘c′",
                &xy,
                |l| src.braid(f2(l, 0, &x, &y), 0, &x, &y),
                |l| f2(dst.braid(l, 0, &x, &y), 0, &y, &x),
            ));
        }
    }
    for t in tuples(m, 3) {
        let (x, y, z) = (leaf(t[0]), leaf(t[1]), leaf(t[2]));
        let xy = Obj::t(x.clone(), y.clone());
        let yz = Obj::t(y.clone(), z.clone());
        let s = Obj::t(xy.clone(), z.clone());
        ids.push(same_map(
            format!("{tag}.monoidal[{}]", setup.names(&t)),
            "F(a)∘F₂∘(F₂⊗id) = F₂∘(id⊗F₂)∘a′",
            &s,
            |l| {
                let l = f2(l, 0, &x, &y);
                let l = f2(l, 0, &xy, &z);
                src.assoc(l, 0, &x, &y, &z, false)
            },
            |l| {
                let l = dst.assoc(l, 0, &x, &y, &z, false);
                let l = f2(l, x.len(), &y, &z);
                f2(l, 0, &x, &yz)
            },
        ));
    }
    for k in 0..m {
        let x = leaf(k);
        let name = &setup.members[k].name;
        let kx = Obj::t(k_obj.clone(), x.clone());
        let xk = Obj::t(x.clone(), k_obj.clone());
        ids.push(same_map(
            format!("{tag}.left-unit[{name}]"),
            "F(l)∘F₂ = l′",
            &kx,
            |l| src.left_unit(f2(l, 0, &k_obj, &x), 0, &x),
            |l| dst.left_unit(l, 0, &x),
        ));
        ids.push(same_map(
            format!("{tag}.right-unit[{name}]"),
            "F(r)∘F₂ = r′",
            &xk,
            |l| src.right_unit(f2(l, 0, &x, &k_obj), 0, &x),
            |l| dst.right_unit(l, 0, &x),
        ));
    }
    ids
}

/// `F: Rep^{from}(h) → Rep^{to}(h)` on the given modules, braided when an R-matrix is given.
pub fn check_functor_f(
    h: &HomBialgebra,
    modules: &[HomModule],
    r: Option<(&TensorElement2, &TensorElement2)>,
    from: RepConfig,
    to: RepConfig,
) -> Result<VerificationReport> {
    if from.flavor != to.flavor || h.flavor() != from.flavor {
        return Err(Error::FlavorMismatch(
            "both categories must share the flavor of the algebra".into(),
        ));
    }
    require_window(h, from)?;
    require_window(h, to)?;
    let setup = Setup::new(&[h], modules)?;
    let src = rmatrix_category(&setup, 0, from, r);
    let dst = rmatrix_category(&setup, 0, to, r);
    Ok(run(&setup.ctx, &functor_f_identities(&setup, &src, &dst)))
}

/// Whether `f: x → x` is bijective, from its matrix on basis tuples.
fn bijective(
    setup: &Setup,
    id: String,
    anchor: &str,
    x: &Obj,
    f: impl Fn(Legs) -> Legs,
) -> CheckRecord {
    let leaves = x.leaves();
    let dims: Vec<usize> = leaves.iter().map(|&s| setup.ctx.space(s).dim()).collect();
    let total: usize = dims.iter().product();
    let expr = f(Legs::inputs(x, 0)).e;
    let mut cols = Vec::with_capacity(total);
    for flat in 0..total {
        let mut rest = flat;
        let mut idx = vec![0; dims.len()];
        for l in (0..dims.len()).rev() {
            idx[l] = rest % dims[l];
            rest /= dims[l];
        }
        let inputs: Vec<Multi> = leaves
            .iter()
            .zip(&idx)
            .map(|(&s, &i)| Multi::basis(&[s], &[i]))
            .collect();
        match apply_sweedler(&setup.ctx, &expr, &inputs) {
            Ok(v) => {
                let mut col = vec![Scalar::zero(); total];
                for (k, c) in v.terms() {
                    let pos = k
                        .iter()
                        .zip(&dims)
                        .fold(0, |acc, (&i, &d)| acc * d + i as usize);
                    col[pos] = c.clone();
                }
                cols.push(Vector::new(col));
            }
            Err(e) => return CheckRecord::fail(&id, anchor, e.to_string()),
        }
    }
    let rank = LinearMap::from_columns(total, &cols).rank();
    CheckRecord::expect(&id, anchor, rank == total, || {
        format!("rank {rank} of {total}")
    })
}

/// Squares for `G: Rep^{i+s,j+s}(h) → Rep^{i,j}(hs)` with `G₂` as in [`functor_g2`].
/// `setup` holds `h` as algebra 0 and the plain twisted algebra `hs` as algebra 1;
/// `src` and `dst` are the categories on them.
pub fn functor_g_identities(
    setup: &Setup,
    src: &Category,
    dst: &Category,
    rho: &TensorElement2,
) -> (Vec<Identity>, VerificationReport) {
    let (i, j) = (dst.cfg.i, dst.cfg.j);
    let hid = src.alg;
    let rho = Arc::new(Multi::from_tensor([hid, hid], rho));
    let g2 = |l, base, x: &Obj, y: &Obj| functor_g2(l, base, x, y, src, &rho, i, j);
    let tag = format!("G[{}→{}]", src.cfg, dst.cfg);
    let braided = src.braiding.is_some() && dst.braiding.is_some();
    let m = setup.members.len();
    let leaf = |k| setup.leaf(k);
    let k_obj = Obj::Leaf(setup.unit());
    let mut ids = Vec::new();
    let mut direct = VerificationReport::new();
    for t in tuples(m, 2) {
        let (x, y) = (leaf(t[0]), leaf(t[1]));
        let xy = Obj::t(x.clone(), y.clone());
        let names = setup.names(&t);
        ids.push(linearity(
            format!("{tag}.g2-linear[{names}]"),
            "G₂(h⇀x) = h·G₂(x)",
            dst,
            src,
            &xy,
            &xy,
            |l| g2(l, 0, &x, &y),
        ));
        direct.push(bijective(
            setup,
            format!("{tag}.g2-invertible[{names}]"),
            "G₂ is bijective",
            &xy,
            |l| g2(l, 0, &x, &y),
        ));
        if braided {
            ids.push(same_map(
                format!("{tag}.braided[{names}]"),
                "G₂∘c̄ = G(c)∘G₂",
                &xy,
                |l| g2(dst.braid(l, 0, &x, &y), 0, &y, &x),
                |l| src.braid(g2(l, 0, &x, &y), 0, &x, &y),
            ));
        }
    }
    for t in tuples(m, 3) {
        let (x, y, z) = (leaf(t[0]), leaf(t[1]), leaf(t[2]));
        let xy = Obj::t(x.clone(), y.clone());
        let yz = Obj::t(y.clone(), z.clone());
        let s = Obj::t(xy.clone(), z.clone());
        ids.push(same_map(
            format!("{tag}.monoidal[{}]", setup.names(&t)),
            "G(a)∘G₂∘(G₂⊗id) = G₂∘(id⊗G₂)∘ā",
            &s,
            |l| {
                let l = g2(l, 0, &x, &y);
                let l = g2(l, 0, &xy, &z);
                src.assoc(l, 0, &x, &y, &z, false)
            },
            |l| {
                let l = dst.assoc(l, 0, &x, &y, &z, false);
                let l = g2(l, x.len(), &y, &z);
                g2(l, 0, &x, &yz)
            },
        ));
    }
    for k in 0..m {
        let x = leaf(k);
        let name = &setup.members[k].name;
        let kx = Obj::t(k_obj.clone(), x.clone());
        let xk = Obj::t(x.clone(), k_obj.clone());
        ids.push(same_map(
            format!("{tag}.left-unit[{name}]"),
            "G(l)∘G₂ = l̄",
            &kx,
            |l| src.left_unit(g2(l, 0, &k_obj, &x), 0, &x),
            |l| dst.left_unit(l, 0, &x),
        ));
        ids.push(same_map(
            format!("{tag}.right-unit[{name}]"),
            "G(r)∘G₂ = r̄",
            &xk,
            |l| src.right_unit(g2(l, 0, &x, &k_obj), 0, &x),
            |l| dst.right_unit(l, 0, &x),
        ));
    }
    (ids, direct)
}

/// R-matrices of `h` and of the twisted algebra, as `((R, R⁻¹), (R^σ, (R^σ)⁻¹))`.
pub type RPair<'a> = (
    (&'a TensorElement2, &'a TensorElement2),
    (&'a TensorElement2, &'a TensorElement2),
);

/// `G: Rep^{i+shift,j+shift}(h) → Rep^{i,j}(hs)` on the given modules. `h` is
/// monoidal and `hs` the plain twisted algebra with the same carrier.
#[allow(clippy::too_many_arguments)]
pub fn check_functor_g(
    h: &HomBialgebra,
    hs: &HomBialgebra,
    rho: &TensorElement2,
    modules: &[HomModule],
    r: Option<RPair<'_>>,
    i: i32,
    j: i32,
    shift: i32,
) -> Result<VerificationReport> {
    if h.flavor() != Flavor::Monoidal || hs.flavor() != Flavor::Plain {
        return Err(Error::FlavorMismatch(
            "G runs from a monoidal algebra to its plain twist".into(),
        ));
    }
    let scfg = RepConfig::new(i + shift, j + shift, Flavor::Monoidal);
    let tcfg = RepConfig::new(i, j, Flavor::Plain);
    require_window(h, scfg)?;
    require_window(hs, tcfg)?;
    let setup = Setup::new(&[h, hs], modules)?;
    let src = rmatrix_category(&setup, 0, scfg, r.map(|x| x.0));
    let dst = rmatrix_category(&setup, 1, tcfg, r.map(|x| x.1));
    let (ids, mut report) = functor_g_identities(&setup, &src, &dst, rho);
    report.extend(run(&setup.ctx, &ids));
    Ok(report)
}

/// Runs [`check_functor_g`] with shifts `1..=5` and records, as notes, which
/// shifts make every square commute.
pub fn probe_shifts(
    h: &HomBialgebra,
    hs: &HomBialgebra,
    rho: &TensorElement2,
    modules: &[HomModule],
    r: Option<RPair<'_>>,
    i: i32,
    j: i32,
) -> VerificationReport {
    let mut report = VerificationReport::new();
    for s in 1..=5 {
        let id = format!("G-shift[{s}]({i},{j})");
        let text = match check_functor_g(h, hs, rho, modules, r, i, j, s) {
            Ok(rep) if rep.all_passed() => "all squares commute".to_string(),
            Ok(rep) => format!("{} of {} squares fail", rep.failed(), rep.checks.len()),
            Err(e) => e.to_string(),
        };
        report.push(CheckRecord::note(
            &id,
            "Rep^{i+s,j+s}(H) vs Rep^{i,j}(H^σ)",
            text,
        ));
    }
    report
}

/// Index ranges, module seed, and scope of a sweep over categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub i: RangeInclusive<i32>,
    pub j: RangeInclusive<i32>,
    pub seed: u64,
    pub scope: Scope,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            i: -2..=2,
            j: -2..=2,
            seed: 0,
            scope: Scope::default(),
        }
    }
}

impl Grid {
    pub fn points(&self) -> Vec<(i32, i32)> {
        self.i
            .clone()
            .flat_map(|i| self.j.clone().map(move |j| (i, j)))
            .collect()
    }
}

/// The shift between the source and target categories of `G`.
pub const G_SHIFT: i32 = 3;

/// Largest power of `α` a sweep needs: the categories of the grid and, when
/// twists are swept, the shifted sources of `G`.
pub fn grid_window(grid: &Grid, flavor: Flavor, with_twists: bool) -> i32 {
    grid.points()
        .into_iter()
        .map(|(i, j)| {
            let base = RepConfig::new(i, j, flavor).required_window();
            if with_twists && flavor == Flavor::Monoidal {
                base.max(RepConfig::new(i + G_SHIFT, j + G_SHIFT, flavor).required_window())
            } else {
                base
            }
        })
        .max()
        .unwrap_or(0)
}

/// Sweeps `Rep^{i,j}(h)` over the grid on the trivial, regular, and seeded random
/// modules: monoidal coherence at every point, braided coherence for each
/// R-matrix, `F` from each point to the next one in row-major order (cyclically),
/// and, for a monoidal `h`, `G` at shift 3 for each twist together with shift
/// probes at the first grid point.
pub fn check_grid(
    h: &HomBialgebra,
    rmatrices: &[RMatrix],
    twists: &[Twist],
    grid: &Grid,
) -> Result<VerificationReport> {
    check_grid_on(h, &standard_modules(h, grid.seed)?, rmatrices, twists, grid)
}

/// [`check_grid`] on the given modules; the first must be the trivial one.
pub fn check_grid_on(
    h: &HomBialgebra,
    modules: &[HomModule],
    rmatrices: &[RMatrix],
    twists: &[Twist],
    grid: &Grid,
) -> Result<VerificationReport> {
    let flavor = h.flavor();
    let sweep_twists = flavor == Flavor::Monoidal && !twists.is_empty();
    let need = grid_window(grid, flavor, sweep_twists);
    if need > h.window() {
        return Err(Error::WindowExceeded {
            power: need,
            window: h.window(),
        });
    }
    let points = grid.points();
    let setup = Setup::new(&[h], modules)?;
    let mut report = VerificationReport::new();
    let cats: Vec<Category> = points
        .iter()
        .map(|&(i, j)| setup.category(0, RepConfig::new(i, j, flavor)))
        .collect();
    for cat in &cats {
        report.extend(run(
            &setup.ctx,
            &monoidal_identities(&setup, cat, grid.scope),
        ));
        for rm in rmatrices {
            let braided = cat.clone().with_rmatrix(rm.r(), rm.inverse());
            report.extend_prefixed(
                &rm.name,
                run(&setup.ctx, &braided_identities(&setup, &braided)),
            );
        }
    }
    if cats.len() > 1 {
        for (k, from) in cats.iter().enumerate() {
            let to = &cats[(k + 1) % cats.len()];
            report.extend(run(&setup.ctx, &functor_f_identities(&setup, from, to)));
            for rm in rmatrices {
                let (f, t) = (
                    from.clone().with_rmatrix(rm.r(), rm.inverse()),
                    to.clone().with_rmatrix(rm.r(), rm.inverse()),
                );
                let ids: Vec<Identity> = functor_f_identities(&setup, &f, &t)
                    .into_iter()
                    .filter(|i| i.id.contains(".braided["))
                    .collect();
                report.extend_prefixed(&rm.name, run(&setup.ctx, &ids));
            }
        }
    }
    if sweep_twists {
        for tw in twists {
            let hs = build_twisted_bialgebra(h, tw)?;
            let twisted: Vec<(RMatrix, &RMatrix)> = rmatrices
                .iter()
                .map(|rm| Ok((twist_rmatrix(h, tw, rm, &hs)?, rm)))
                .collect::<Result<_>>()?;
            let gsetup = Setup::new(&[h, &hs], modules)?;
            for &(i, j) in &points {
                let src = gsetup.category(
                    0,
                    RepConfig::new(i + G_SHIFT, j + G_SHIFT, Flavor::Monoidal),
                );
                let dst = gsetup.category(1, RepConfig::new(i, j, Flavor::Plain));
                let (ids, direct) = functor_g_identities(&gsetup, &src, &dst, tw.rho());
                report.extend_prefixed(&tw.name, direct);
                report.extend_prefixed(&tw.name, run(&gsetup.ctx, &ids));
                for (rs, rm) in &twisted {
                    let bs = src.clone().with_rmatrix(rm.r(), rm.inverse());
                    let bd = dst.clone().with_rmatrix(rs.r(), rs.inverse());
                    let (ids, _) = functor_g_identities(&gsetup, &bs, &bd, tw.rho());
                    let ids: Vec<Identity> = ids
                        .into_iter()
                        .filter(|i| i.id.contains(".braided["))
                        .collect();
                    report.extend_prefixed(
                        &format!("{}/{}", tw.name, rm.name),
                        run(&gsetup.ctx, &ids),
                    );
                }
            }
            let (i, j) = points[0];
            let r = twisted
                .first()
                .map(|(rs, rm)| ((rm.r(), rm.inverse()), (rs.r(), rs.inverse())));
            report.extend_prefixed(&tw.name, probe_shifts(h, &hs, tw.rho(), modules, r, i, j));
        }
    }
    Ok(report)
}

//! Drinfeld twists: validation, inversion, the twisted coproduct and antipode,
//! and twisted module algebras and coalgebras.

use std::fmt;
use std::sync::Arc;

use crate::axioms::{self, antipode_identities, run};
use crate::error::{Error, Result};
use crate::exact::{
    apply_sweedler, solve_linear, tensor2_hom_product, Context, CoproductMap, Expr, Identity,
    LinearMap, Multi, SpaceId, TensorElement2, Vector,
};
use crate::report::{CheckRecord, VerificationReport};
use crate::structures::{
    Coalgebra, Flavor, HomAlgebra, HomBialgebra, ModuleAlgebra, ModuleCoalgebra,
};

/// A validated twist `σ` together with its inverse `ϱ`.
#[derive(Clone, Debug)]
pub struct Twist {
    pub name: String,
    sigma: TensorElement2,
    rho: TensorElement2,
    /// Outcome of every defining condition and its consequences.
    pub report: VerificationReport,
}

impl Twist {
    pub fn sigma(&self) -> &TensorElement2 {
        &self.sigma
    }

    pub fn rho(&self) -> &TensorElement2 {
        &self.rho
    }

    /// Whether `σ = 1 ⊗ 1` in `h`.
    pub fn is_trivial(&self, h: &HomBialgebra) -> bool {
        self.sigma == h.one_tensor_one()
    }
}

pub(crate) fn konst(s: SpaceId, t: &TensorElement2) -> Expr {
    Expr::constant(Multi::from_tensor([s, s], t))
}

fn vec_of(t: &TensorElement2) -> Vector {
    let [a, b] = t.dims();
    let mut v = Vector::zero(a * b);
    for (k, c) in t.iter() {
        v[k[0] as usize * b + k[1] as usize] = c.clone();
    }
    v
}

fn tensor_of(v: &Vector, n: usize) -> TensorElement2 {
    TensorElement2::from_terms(
        [n, n],
        v.support().map(|(i, c)| ([i / n, i % n], c.clone())),
    )
    .expect("in range")
}

/// Two-sided inverse of `t` for the componentwise product on `H ⊗ H`.
///
/// Solves `t·ϱ = 1⊗1` and `ϱ·t = 1⊗1` separately and requires both to have the
/// same unique solution.
pub fn invert_tensor2(h: &HomBialgebra, t: &TensorElement2) -> Result<TensorElement2> {
    let n = h.dim();
    if t.dims() != [n, n] {
        return Err(Error::mismatch("element does not live in H ⊗ H"));
    }
    let mut left = Vec::with_capacity(n * n);
    let mut right = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let e = TensorElement2::pure([&h.basis_vector(a), &h.basis_vector(b)]);
            left.push(vec_of(&tensor2_hom_product(h.product(), t, &e)?));
            right.push(vec_of(&tensor2_hom_product(h.product(), &e, t)?));
        }
    }
    let target = vec_of(&h.one_tensor_one());
    let l = solve_linear(&LinearMap::from_columns(n * n, &left), &target)?;
    let r = solve_linear(&LinearMap::from_columns(n * n, &right), &target)?;
    if l != r {
        return Err(Error::LeftRightMismatch);
    }
    Ok(tensor_of(&l, n))
}

/// `(α⊗α)σ = σ`, the counit normalizations, and the cocycle condition.
pub fn definition_identities(s: SpaceId, sigma: &TensorElement2) -> Vec<Identity> {
    let sg = || konst(s, sigma);
    vec![
        Identity::new(
            "twist.alpha-invariant",
            "(α⊗α)σ = σ",
            vec![],
            sg().alpha(0, 1).alpha(1, 1),
            sg(),
        ),
        Identity::new(
            "twist.normalized-left",
            "(ε⊗id)σ = 1",
            vec![],
            sg().counit(0),
            Expr::unit(s),
        ),
        Identity::new(
            "twist.normalized-right",
            "(id⊗ε)σ = 1",
            vec![],
            sg().counit(1),
            Expr::unit(s),
        ),
        Identity::new(
            "twist.cocycle",
            "σ¹ ⊗ σ̄¹σ₁² ⊗ σ̄²σ₂² = σ̄¹σ₁¹ ⊗ σ̄²σ₂¹ ⊗ σ²",
            vec![],
            sg().comul(1).tensor(sg()).mul(3, 1).mul(3, 2),
            sg().comul(0).tensor(sg()).mul(3, 0).mul(3, 1),
        ),
    ]
}

/// Statements that follow from the definition: invariance and cocycle property of
/// `ϱ`, and the mixed identity used to build the twisted antipode.
pub fn consequence_identities(
    s: SpaceId,
    sigma: &TensorElement2,
    rho: &TensorElement2,
) -> Vec<Identity> {
    let sg = || konst(s, sigma);
    let rh = || konst(s, rho);
    let one = || Expr::unit(s).tensor(Expr::unit(s));
    vec![
        Identity::new(
            "twist.inverse-left",
            "σϱ = 1⊗1",
            vec![],
            sg().tensor(rh()).mul(0, 2).mul(1, 2),
            one(),
        ),
        Identity::new(
            "twist.inverse-right",
            "ϱσ = 1⊗1",
            vec![],
            rh().tensor(sg()).mul(0, 2).mul(1, 2),
            one(),
        ),
        Identity::new(
            "twist.inverse-alpha-invariant",
            "(α⊗α)ϱ = ϱ",
            vec![],
            rh().alpha(0, 1).alpha(1, 1),
            rh(),
        ),
        Identity::new(
            "twist.inverse-cocycle",
            "ϱ¹ ⊗ ϱ₁²ϱ̄¹ ⊗ ϱ₂²ϱ̄² = ϱ₁¹ϱ̄¹ ⊗ ϱ₂¹ϱ̄² ⊗ ϱ²",
            vec![],
            rh().comul(1).tensor(rh()).mul(1, 3).mul(2, 3),
            rh().comul(0).tensor(rh()).mul(0, 3).mul(1, 3),
        ),
        Identity::new(
            "twist.mixed",
            "α(σ¹) ⊗ ϱ¹σ² ⊗ α(ϱ²) = σ¹α(ϱ₁¹) ⊗ α(σ₁²)α(ϱ₂¹) ⊗ α(σ₂²)ϱ²",
            vec![],
            sg().tensor(rh()).mul(2, 1).alpha(0, 1).alpha(2, 1),
            sg().comul(1)
                .tensor(rh().comul(0))
                .alpha(3, 1)
                .alpha(1, 1)
                .alpha(4, 1)
                .alpha(2, 1)
                .mul(0, 3)
                .mul(1, 3)
                .mul(2, 3),
        ),
    ]
}

fn require_monoidal(h: &HomBialgebra) -> Result<()> {
    if h.flavor() != Flavor::Monoidal {
        return Err(Error::FlavorMismatch(format!(
            "twists are defined on monoidal Hom-bialgebras, {} is plain",
            h.name()
        )));
    }
    Ok(())
}

/// Checks a twist candidate. Failing defining conditions reject the candidate;
/// failing consequences are reported as a theorem violation.
pub fn validate_twist(h: &HomBialgebra, name: &str, sigma: TensorElement2) -> Result<Twist> {
    require_monoidal(h)?;
    let (ctx, s) = h.context();
    let mut report = VerificationReport::new();
    let rho = match invert_tensor2(h, &sigma) {
        Ok(r) => {
            report.push(CheckRecord::pass(
                "twist.invertible",
                "σ has a two-sided inverse",
            ));
            Some(r)
        }
        Err(e) => {
            report.push(CheckRecord::fail(
                "twist.invertible",
                "σ has a two-sided inverse",
                e.to_string(),
            ));
            None
        }
    };
    report.extend(run(&ctx, &definition_identities(s, &sigma)));
    let Some(rho) = rho.filter(|_| report.all_passed()) else {
        return Err(Error::Rejected(Box::new(report)));
    };
    let consequences = run(&ctx, &consequence_identities(s, &sigma, &rho));
    let ok = consequences.all_passed();
    report.extend(consequences);
    if !ok {
        return Err(Error::TheoremViolation(Box::new(report)));
    }
    Ok(Twist {
        name: name.to_string(),
        sigma,
        rho,
        report,
    })
}

/// `(σΔ(x))ϱ`, the printed bracketing.
fn twisted_comul_expr(s: SpaceId, tw: &Twist, left_first: bool) -> Expr {
    let sg = konst(s, &tw.sigma);
    let rh = konst(s, &tw.rho);
    let dx = Expr::input(0).comul(0);
    if left_first {
        sg.tensor(dx)
            .mul(0, 2)
            .mul(1, 2)
            .tensor(rh)
            .mul(0, 2)
            .mul(1, 2)
    } else {
        sg.tensor(dx.tensor(rh).mul(0, 2).mul(1, 2))
            .mul(0, 2)
            .mul(1, 2)
    }
}

/// `Δ^σ(x) = (σΔ(x))ϱ`, cross-checked against `σ(Δ(x)ϱ)`.
pub fn twist_coproduct(h: &HomBialgebra, tw: &Twist, x: &Vector) -> Result<TensorElement2> {
    let (ctx, s) = h.context();
    twist_coproduct_in(&ctx, s, h.dim(), tw, x)
}

fn twist_coproduct_in(
    ctx: &Context,
    s: SpaceId,
    n: usize,
    tw: &Twist,
    x: &Vector,
) -> Result<TensorElement2> {
    let input = [Multi::from_vector(s, x)];
    let a = apply_sweedler(ctx, &twisted_comul_expr(s, tw, true), &input)?;
    let b = apply_sweedler(ctx, &twisted_comul_expr(s, tw, false), &input)?;
    if a != b {
        let rec = CheckRecord::fail(
            "twist.comul-bracketing",
            "(σΔ(x))ϱ = σ(Δ(x)ϱ)",
            format!("at {:?}: {} ≠ {}", x, ctx.render(&a), ctx.render(&b)),
        );
        return Err(Error::TheoremViolation(Box::new(
            [rec].into_iter().collect(),
        )));
    }
    Ok(a.to_tensor([n, n]))
}

/// The structure tensor of `Δ^σ`.
pub fn twisted_coproduct_map(h: &HomBialgebra, tw: &Twist) -> Result<CoproductMap> {
    let (ctx, s) = h.context();
    let images = (0..h.dim())
        .map(|i| twist_coproduct_in(&ctx, s, h.dim(), tw, &h.basis_vector(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoproductMap::from_images(&images))
}

/// `H^σ = (H, α, m, η, Δ^σ, ε)` of plain flavor, without antipode. Fails with a
/// theorem violation unless it passes the full plain Hom-bialgebra suite.
pub fn build_twisted_bialgebra(h: &HomBialgebra, tw: &Twist) -> Result<HomBialgebra> {
    require_monoidal(h)?;
    let comul = twisted_coproduct_map(h, tw)?;
    let mut parts = h.parts();
    parts.name = format!("{}^{}", h.name(), tw.name);
    parts.flavor = Flavor::Plain;
    parts.coproduct = comul;
    parts.antipode = None;
    let hs = HomBialgebra::with_window(parts, h.window())?;
    let report = axioms::check_hom_bialgebra(&hs)?;
    if !report.all_passed() {
        return Err(Error::TheoremViolation(Box::new(report)));
    }
    Ok(hs)
}

/// Whether `H^σ` happens to satisfy the monoidal coalgebra axioms too.
pub fn monoidal_flavor_note(hs: &HomBialgebra) -> CheckRecord {
    let id = "twisted.monoidal-coalgebra";
    let anchor = "H^σ under γ⁻¹ coalgebra axioms";
    match axioms::check_hom_coalgebra(&hs.with_flavor(Flavor::Monoidal)) {
        Ok(r) if r.all_passed() => CheckRecord::note(id, anchor, "also a monoidal Hom-coalgebra"),
        Ok(r) => CheckRecord::note(
            id,
            anchor,
            format!(
                "not a monoidal Hom-coalgebra ({})",
                r.failures()
                    .map(|c| c.id.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        ),
        Err(e) => CheckRecord::note(id, anchor, e.to_string()),
    }
}

/// A full parenthesization of a product word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bracketing {
    Leaf,
    Node(Box<Bracketing>, Box<Bracketing>),
}

impl Bracketing {
    fn node(l: Bracketing, r: Bracketing) -> Self {
        Bracketing::Node(Box::new(l), Box::new(r))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Bracketing::Leaf => 1,
            Bracketing::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    /// Every bracketing of `n` factors.
    pub fn all(n: usize) -> Vec<Bracketing> {
        if n == 1 {
            return vec![Bracketing::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            for l in Self::all(k) {
                for r in Self::all(n - k) {
                    out.push(Self::node(l.clone(), r));
                }
            }
        }
        out
    }

    /// Multiplies legs `base..base + leaves()` down to the single leg `base`.
    fn apply(&self, e: Expr, base: usize) -> Expr {
        match self {
            Bracketing::Leaf => e,
            Bracketing::Node(l, r) => {
                let e = l.apply(e, base);
                r.apply(e, base + 1).mul(base, base + 1)
            }
        }
    }

    fn render(&self, names: &mut impl Iterator<Item = &'static str>, out: &mut String, top: bool) {
        match self {
            Bracketing::Leaf => out.push_str(names.next().expect("enough names")),
            Bracketing::Node(l, r) => {
                if !top {
                    out.push('(');
                }
                l.render(names, out, false);
                r.render(names, out, false);
                if !top {
                    out.push(')');
                }
            }
        }
    }
}

/// Factors of the twisted antipode word, in order.
const ANTIPODE_FACTORS: [&str; 5] = ["σ¹", "S(α⁻¹(σ²))", "S(α⁻⁴(x))", "S(α⁻³(ϱ¹))", "ϱ²"];

impl fmt::Display for Bracketing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let mut names = ANTIPODE_FACTORS
            .iter()
            .copied()
            .chain(std::iter::repeat("·"));
        self.render(&mut names, &mut s, true);
        f.write_str(&s)
    }
}

/// The printed bracketing `(σ¹(S(α⁻¹σ²)(S(α⁻⁴x)S(α⁻³ϱ¹))))ϱ²`.
pub fn printed_antipode_bracketing() -> Bracketing {
    use Bracketing::Leaf;
    let inner = Bracketing::node(Leaf, Bracketing::node(Leaf, Bracketing::node(Leaf, Leaf)));
    Bracketing::node(inner, Leaf)
}

fn antipode_word(s: SpaceId, tw: &Twist, b: &Bracketing) -> Expr {
    let word = konst(s, &tw.sigma)
        .tensor(Expr::input(0))
        .tensor(konst(s, &tw.rho))
        .alpha(1, -1)
        .antipode(1)
        .alpha(2, -4)
        .antipode(2)
        .alpha(3, -3)
        .antipode(3);
    b.apply(word, 0)
}

/// The twisted antipode and the bracketing under which it was accepted.
#[derive(Clone, Debug)]
pub struct TwistedAntipode {
    pub map: LinearMap,
    pub bracketing: Bracketing,
    pub printed: bool,
    /// Antipode suite of `H^σ` under the accepted map.
    pub report: VerificationReport,
}

fn antipode_candidate(h: &HomBialgebra, tw: &Twist, b: &Bracketing) -> Result<LinearMap> {
    let (ctx, s) = h.context();
    let expr = antipode_word(s, tw, b);
    let cols = (0..h.dim())
        .map(|i| Ok(apply_sweedler(&ctx, &expr, &[Multi::basis(&[s], &[i])])?.to_vector(h.dim())))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearMap::from_columns(h.dim(), &cols))
}

fn core_antipode_ok(r: &VerificationReport) -> bool {
    ["hopf.S*id", "hopf.id*S", "hopf.S-alpha"]
        .iter()
        .all(|id| r.find(id).is_some_and(|c| c.outcome.is_pass()))
}

/// `S^σ` from the printed formula, falling back to the other bracketings of
/// the same five-factor word if the printed one is not an antipode of `hs`.
pub fn twist_antipode(h: &HomBialgebra, tw: &Twist, hs: &HomBialgebra) -> Result<TwistedAntipode> {
    if h.antipode().is_none() {
        return Err(Error::missing(format!("{} has no antipode", h.name())));
    }
    let printed = printed_antipode_bracketing();
    let mut order = vec![printed.clone()];
    order.extend(Bracketing::all(5).into_iter().filter(|b| *b != printed));
    let mut first_report = None;
    for b in order {
        let map = antipode_candidate(h, tw, &b)?;
        let cand = hs.with_antipode(Some(map.clone()))?;
        let (ctx, s) = cand.context();
        let report = run(&ctx, &antipode_identities(s));
        if core_antipode_ok(&report) {
            return Ok(TwistedAntipode {
                printed: b == printed,
                map,
                bracketing: b,
                report,
            });
        }
        first_report.get_or_insert(report);
    }
    Err(Error::TheoremViolation(Box::new(
        first_report.expect("at least one bracketing"),
    )))
}

/// `H^σ` with `S^σ` attached when `h` has an antipode.
pub fn build_twisted_hopf(
    h: &HomBialgebra,
    tw: &Twist,
) -> Result<(HomBialgebra, Option<TwistedAntipode>)> {
    let hs = build_twisted_bialgebra(h, tw)?;
    if h.antipode().is_none() {
        return Ok((hs, None));
    }
    let sa = twist_antipode(h, tw, &hs)?;
    let hs = hs.with_antipode(Some(sa.map.clone()))?;
    Ok((hs, Some(sa)))
}

/// `a ∘ b = (ϱ¹·a)(ϱ²·b)` with structure map `α_A²`; fails unless the result is
/// a monoidal Hom-algebra.
pub fn twist_module_algebra(h: &HomBialgebra, tw: &Twist, a: &ModuleAlgebra) -> Result<HomAlgebra> {
    let pre = axioms::check_module_algebra(h, a)?;
    if !pre.all_passed() {
        return Err(Error::precondition(format!(
            "{} is not a module algebra: {}",
            a.name(),
            pre.summary()
        )));
    }
    let mut ctx = Context::new();
    let hs = ctx.add_space(h.space());
    let s = ctx.add_space(a.space());
    ctx.add_action(hs, s, a.module.action_arc())?;
    let expr = konst(hs, &tw.rho)
        .tensor(Expr::input(0))
        .tensor(Expr::input(1))
        .act(0, 2)
        .act(1, 2)
        .mul(0, 1);
    let n = a.module.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = apply_sweedler(
                &ctx,
                &expr,
                &[Multi::basis(&[s], &[i]), Multi::basis(&[s], &[j])],
            )?
            .to_vector(n);
            entries.extend(v.support().map(|(k, c)| (i, j, k, c.clone())));
        }
    }
    let product = crate::exact::BilinearMap::from_entries(n, n, n, entries)?;
    let alpha = a.module.alpha().compose(a.module.alpha())?;
    let out = HomAlgebra {
        name: format!("{}^{}", a.name(), tw.name),
        basis: Arc::new(a.module.basis().to_vec()),
        product: Arc::new(product),
        unit: a.unit.clone(),
        alpha,
    };
    let mut c2 = Context::new();
    let t = c2.add_space(out.space()?);
    let report = run(&c2, &axioms::hom_algebra_identities(t));
    if !report.all_passed() {
        return Err(Error::TheoremViolation(Box::new(report)));
    }
    Ok(out)
}

/// `Δ̂(c) = σ¹·c₁ ⊗ σ²·c₂`; fails unless the result is a coassociative counital
/// coalgebra.
pub fn twist_module_coalgebra(
    h: &HomBialgebra,
    tw: &Twist,
    c: &ModuleCoalgebra,
) -> Result<Coalgebra> {
    let pre = axioms::check_module_coalgebra(h, c)?;
    if !pre.all_passed() {
        return Err(Error::precondition(format!(
            "{} is not a module coalgebra: {}",
            c.name(),
            pre.summary()
        )));
    }
    let mut ctx = Context::new();
    let hs = ctx.add_space(h.space());
    let s = ctx.add_space(c.space());
    ctx.add_action(hs, s, c.module.action_arc())?;
    let expr = konst(hs, &tw.sigma)
        .tensor(Expr::input(0).comul(0))
        .act(0, 2)
        .act(1, 2);
    let n = c.module.dim();
    let images = (0..n)
        .map(|i| Ok(apply_sweedler(&ctx, &expr, &[Multi::basis(&[s], &[i])])?.to_tensor([n, n])))
        .collect::<Result<Vec<_>>>()?;
    let out = Coalgebra {
        name: format!("{}^{}", c.name(), tw.name),
        basis: Arc::new(c.module.basis().to_vec()),
        coproduct: Arc::new(CoproductMap::from_images(&images)),
        counit: c.counit.clone(),
    };
    let mut c2 = Context::new();
    let t = c2.add_space(out.space());
    let report = run(&c2, &axioms::ordinary_coalgebra_identities(t));
    if !report.all_passed() {
        return Err(Error::TheoremViolation(Box::new(report)));
    }
    Ok(out)
}

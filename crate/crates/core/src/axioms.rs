//! Axiom suites, each checked exhaustively on basis tuples.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{Context, Expr, Identity, Multi, Scalar, SpaceId};
use crate::report::VerificationReport;
use crate::structures::{Flavor, HomBialgebra, HomModule, ModuleAlgebra, ModuleCoalgebra};

fn t(n: usize) -> Expr {
    Expr::tensor_all((0..n).map(Expr::input))
}

fn one() -> Expr {
    Expr::constant(Multi::scalar(Scalar::one()))
}

/// Checks every identity and collects the records in order.
pub fn run(ctx: &Context, identities: &[Identity]) -> VerificationReport {
    identities
        .par_iter()
        .map(|i| i.check(ctx))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Multiplicativity of `α`, Hom-associativity, and the unit laws.
pub fn hom_algebra_identities(s: SpaceId) -> Vec<Identity> {
    let a = || vec![s];
    vec![
        Identity::new(
            "alg.alpha-multiplicative",
            "α(ab) = α(a)α(b)",
            vec![a(), a()],
            t(2).mul(0, 1).alpha(0, 1),
            t(2).alpha(0, 1).alpha(1, 1).mul(0, 1),
        ),
        Identity::new(
            "alg.hom-associative",
            "α(a)(bc) = (ab)α(c)",
            vec![a(), a(), a()],
            t(3).alpha(0, 1).mul(1, 2).mul(0, 1),
            t(3).mul(0, 1).alpha(1, 1).mul(0, 1),
        ),
        Identity::new(
            "alg.alpha-unit",
            "α(1) = 1",
            vec![],
            Expr::unit(s).alpha(0, 1),
            Expr::unit(s),
        ),
        Identity::new(
            "alg.left-unit",
            "1a = α(a)",
            vec![a()],
            Expr::unit(s).tensor(Expr::input(0)).mul(0, 1),
            Expr::input(0).alpha(0, 1),
        ),
        Identity::new(
            "alg.right-unit",
            "a1 = α(a)",
            vec![a()],
            Expr::input(0).tensor(Expr::unit(s)).mul(0, 1),
            Expr::input(0).alpha(0, 1),
        ),
    ]
}

/// Coalgebra axioms; `twist` is the power of `α` appearing in coassociativity and
/// the counit law (`-1` for the monoidal flavor, `1` for the plain one, `0` for
/// an ordinary coalgebra).
pub fn coalgebra_identities(s: SpaceId, twist: i32) -> Vec<Identity> {
    let c = || vec![vec![s]];
    let g = match twist {
        -1 => "γ⁻¹",
        0 => "id",
        _ => "α",
    };
    vec![
        Identity::new(
            "coalg.alpha-comultiplicative",
            "Δ(α(c)) = α(c₁)⊗α(c₂)",
            c(),
            Expr::input(0).alpha(0, 1).comul(0),
            Expr::input(0).comul(0).alpha(0, 1).alpha(1, 1),
        ),
        Identity::new(
            "coalg.hom-coassociative",
            format!("{g}(c₁)⊗Δ(c₂) = Δ(c₁)⊗{g}(c₂)"),
            c(),
            Expr::input(0).comul(0).alpha(0, twist).comul(1),
            Expr::input(0).comul(0).comul(0).alpha(2, twist),
        ),
        Identity::new(
            "coalg.counit-alpha",
            "ε∘α = ε",
            c(),
            Expr::input(0).alpha(0, 1).counit(0),
            Expr::input(0).counit(0),
        ),
        Identity::new(
            "coalg.left-counit",
            format!("ε(c₁)c₂ = {g}(c)"),
            c(),
            Expr::input(0).comul(0).counit(0),
            Expr::input(0).alpha(0, twist),
        ),
        Identity::new(
            "coalg.right-counit",
            format!("c₁ε(c₂) = {g}(c)"),
            c(),
            Expr::input(0).comul(0).counit(1),
            Expr::input(0).alpha(0, twist),
        ),
    ]
}

/// Coalgebra axioms with `α = id` and no structure map at all.
pub fn ordinary_coalgebra_identities(s: SpaceId) -> Vec<Identity> {
    let c = || vec![vec![s]];
    vec![
        Identity::new(
            "coalg.coassociative",
            "(Δ⊗id)Δ = (id⊗Δ)Δ",
            c(),
            Expr::input(0).comul(0).comul(0),
            Expr::input(0).comul(0).comul(1),
        ),
        Identity::new(
            "coalg.left-counit",
            "ε(c₁)c₂ = c",
            c(),
            Expr::input(0).comul(0).counit(0),
            Expr::input(0),
        ),
        Identity::new(
            "coalg.right-counit",
            "c₁ε(c₂) = c",
            c(),
            Expr::input(0).comul(0).counit(1),
            Expr::input(0),
        ),
    ]
}

/// `Δ` and `ε` are unital algebra maps (for `H ⊗ H` with the componentwise product).
pub fn bialgebra_identities(s: SpaceId) -> Vec<Identity> {
    let a = || vec![s];
    vec![
        Identity::new(
            "bialg.comul-multiplicative",
            "Δ(xy) = Δ(x)Δ(y)",
            vec![a(), a()],
            t(2).mul(0, 1).comul(0),
            t(2).comul(0).comul(2).mul(0, 2).mul(1, 2),
        ),
        Identity::new(
            "bialg.comul-unit",
            "Δ(1) = 1⊗1",
            vec![],
            Expr::unit(s).comul(0),
            Expr::unit(s).tensor(Expr::unit(s)),
        ),
        Identity::new(
            "bialg.counit-multiplicative",
            "ε(xy) = ε(x)ε(y)",
            vec![a(), a()],
            t(2).mul(0, 1).counit(0),
            t(2).counit(0).counit(0),
        ),
        Identity::new(
            "bialg.counit-unit",
            "ε(1) = 1",
            vec![],
            Expr::unit(s).counit(0),
            one(),
        ),
    ]
}

/// Convolution inverse, `α`-compatibility, and the derived antipode properties.
pub fn antipode_identities(s: SpaceId) -> Vec<Identity> {
    let a = || vec![s];
    let eta_eps = || Expr::input(0).counit(0).tensor(Expr::unit(s));
    vec![
        Identity::new(
            "hopf.S*id",
            "S(x₁)x₂ = ε(x)1",
            vec![a()],
            Expr::input(0).comul(0).antipode(0).mul(0, 1),
            eta_eps(),
        ),
        Identity::new(
            "hopf.id*S",
            "x₁S(x₂) = ε(x)1",
            vec![a()],
            Expr::input(0).comul(0).antipode(1).mul(0, 1),
            eta_eps(),
        ),
        Identity::new(
            "hopf.S-alpha",
            "S∘α = α∘S",
            vec![a()],
            Expr::input(0).alpha(0, 1).antipode(0),
            Expr::input(0).antipode(0).alpha(0, 1),
        ),
        Identity::new(
            "hopf.S-antimultiplicative",
            "S(ab) = S(b)S(a)",
            vec![a(), a()],
            t(2).mul(0, 1).antipode(0),
            t(2).antipode(0).antipode(1).mul(1, 0),
        ),
        Identity::new(
            "hopf.S-unit",
            "S(1) = 1",
            vec![],
            Expr::unit(s).antipode(0),
            Expr::unit(s),
        ),
        Identity::new(
            "hopf.S-anticomultiplicative",
            "Δ(S(a)) = S(a₂)⊗S(a₁)",
            vec![a()],
            Expr::input(0).antipode(0).comul(0),
            Expr::input(0)
                .comul(0)
                .antipode(0)
                .antipode(1)
                .swap(2, 0, 1),
        ),
        Identity::new(
            "hopf.counit-S",
            "ε∘S = ε",
            vec![a()],
            Expr::input(0).antipode(0).counit(0),
            Expr::input(0).counit(0),
        ),
    ]
}

/// Hom-module axioms for `H` (space `h`) acting on space `m`.
pub fn module_identities(h: SpaceId, m: SpaceId) -> Vec<Identity> {
    vec![
        Identity::new(
            "mod.alpha-equivariant",
            "α_M(b·m) = α(b)·α_M(m)",
            vec![vec![h], vec![m]],
            t(2).act(0, 1).alpha(0, 1),
            t(2).alpha(0, 1).alpha(1, 1).act(0, 1),
        ),
        Identity::new(
            "mod.hom-associative",
            "α(b)·(b′·m) = (bb′)·α_M(m)",
            vec![vec![h], vec![h], vec![m]],
            t(3).alpha(0, 1).act(1, 2).act(0, 1),
            t(3).mul(0, 1).alpha(1, 1).act(0, 1),
        ),
        Identity::new(
            "mod.unit",
            "1·m = α_M(m)",
            vec![vec![m]],
            Expr::unit(h).tensor(Expr::input(0)).act(0, 1),
            Expr::input(0).alpha(0, 1),
        ),
    ]
}

/// Compatibility of an action with a product on the module.
pub fn module_algebra_identities(h: SpaceId, a: SpaceId) -> Vec<Identity> {
    vec![
        Identity::new(
            "modalg.multiplicative",
            "h·(ab) = (h₁·a)(h₂·b)",
            vec![vec![h], vec![a], vec![a]],
            t(3).mul(1, 2).act(0, 1),
            t(3).comul(0).act(0, 2).act(1, 2).mul(0, 1),
        ),
        Identity::new(
            "modalg.unit",
            "h·1 = ε(h)1",
            vec![vec![h]],
            Expr::input(0).tensor(Expr::unit(a)).act(0, 1),
            Expr::input(0).counit(0).tensor(Expr::unit(a)),
        ),
    ]
}

/// Compatibility of an action with a coproduct on the module.
pub fn module_coalgebra_identities(h: SpaceId, c: SpaceId) -> Vec<Identity> {
    vec![
        Identity::new(
            "modcoalg.comultiplicative",
            "Δ_C(h·c) = h₁·c₁⊗h₂·c₂",
            vec![vec![h], vec![c]],
            t(2).act(0, 1).comul(0),
            t(2).comul(0).comul(2).act(0, 2).act(1, 2),
        ),
        Identity::new(
            "modcoalg.counit",
            "ε_C(h·c) = ε(h)ε_C(c)",
            vec![vec![h], vec![c]],
            t(2).act(0, 1).counit(0),
            t(2).counit(0).counit(0),
        ),
    ]
}

fn coalgebra_twist(h: &HomBialgebra) -> Result<i32> {
    match h.flavor() {
        Flavor::Monoidal if !h.alpha_powers().is_invertible() => Err(Error::AlphaNotInvertible),
        Flavor::Monoidal => Ok(-1),
        Flavor::Plain => Ok(1),
    }
}

pub fn check_hom_algebra(h: &HomBialgebra) -> VerificationReport {
    let (ctx, s) = h.context();
    run(&ctx, &hom_algebra_identities(s))
}

pub fn check_hom_coalgebra(h: &HomBialgebra) -> Result<VerificationReport> {
    let twist = coalgebra_twist(h)?;
    let (ctx, s) = h.context();
    Ok(run(&ctx, &coalgebra_identities(s, twist)))
}

pub fn check_hom_bialgebra(h: &HomBialgebra) -> Result<VerificationReport> {
    let twist = coalgebra_twist(h)?;
    let (ctx, s) = h.context();
    let mut ids = hom_algebra_identities(s);
    ids.extend(coalgebra_identities(s, twist));
    ids.extend(bialgebra_identities(s));
    Ok(run(&ctx, &ids))
}

pub fn check_antipode(h: &HomBialgebra) -> Result<VerificationReport> {
    if h.antipode().is_none() {
        return Err(Error::missing(format!("{} has no antipode", h.name())));
    }
    let (ctx, s) = h.context();
    Ok(run(&ctx, &antipode_identities(s)))
}

/// Which axiom families to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Coalgebra,
    Bialgebra,
    Hopf,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "algebra" => Suite::Algebra,
            "coalgebra" => Suite::Coalgebra,
            "bialgebra" => Suite::Bialgebra,
            "hopf" => Suite::Hopf,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite `{s}`"))),
        })
    }
}

/// Runs a suite; `All` includes the antipode checks when an antipode is present.
pub fn check_suite(h: &HomBialgebra, suite: Suite) -> Result<VerificationReport> {
    match suite {
        Suite::Algebra => Ok(check_hom_algebra(h)),
        Suite::Coalgebra => check_hom_coalgebra(h),
        Suite::Bialgebra => check_hom_bialgebra(h),
        Suite::Hopf => {
            let mut r = check_hom_bialgebra(h)?;
            r.extend(check_antipode(h)?);
            Ok(r)
        }
        Suite::All => {
            let mut r = check_hom_bialgebra(h)?;
            if h.antipode().is_some() {
                r.extend(check_antipode(h)?);
            }
            Ok(r)
        }
    }
}

/// A context with `H` and one module, the action registered.
pub fn module_context(h: &HomBialgebra, m: &HomModule) -> Result<(Context, SpaceId, SpaceId)> {
    let mut ctx = Context::new();
    let hs = ctx.add_space(h.space());
    let ms = ctx.add_space(m.space());
    ctx.add_action(hs, ms, m.action_arc())?;
    Ok((ctx, hs, ms))
}

pub fn check_hom_module(h: &HomBialgebra, m: &HomModule) -> Result<VerificationReport> {
    let (ctx, hs, ms) = module_context(h, m)?;
    Ok(run(&ctx, &module_identities(hs, ms)))
}

pub fn check_module_algebra(h: &HomBialgebra, a: &ModuleAlgebra) -> Result<VerificationReport> {
    let mut ctx = Context::new();
    let hs = ctx.add_space(h.space());
    let s = ctx.add_space(a.space());
    ctx.add_action(hs, s, a.module.action_arc())?;
    let mut ids = hom_algebra_identities(s);
    ids.extend(module_identities(hs, s));
    ids.extend(module_algebra_identities(hs, s));
    Ok(run(&ctx, &ids))
}

pub fn check_module_coalgebra(h: &HomBialgebra, c: &ModuleCoalgebra) -> Result<VerificationReport> {
    let mut ctx = Context::new();
    let hs = ctx.add_space(h.space());
    let s = ctx.add_space(c.space());
    ctx.add_action(hs, s, c.module.action_arc())?;
    let mut ids = coalgebra_identities(s, -1);
    ids.extend(module_identities(hs, s));
    ids.extend(module_coalgebra_identities(hs, s));
    Ok(run(&ctx, &ids))
}

//! R-matrices for both flavors, the quantum Hom-Yang-Baxter equations, and the
//! twisted R-matrix.

use crate::axioms::run;
use crate::correspondence::lift_monoidal;
use crate::error::{Error, Result};
use crate::exact::{apply_sweedler, Expr, Identity, LinearMap, SpaceId, TensorElement2};
use crate::report::{CheckRecord, VerificationReport};
use crate::structures::{Flavor, HomBialgebra};
use crate::twist::{invert_tensor2, konst, Twist};

/// A validated R-matrix and its inverse. The flavor of the parent selects
/// which axiom system it satisfies.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub name: String,
    r: TensorElement2,
    r_inv: TensorElement2,
    pub flavor: Flavor,
    pub report: VerificationReport,
}

impl RMatrix {
    pub fn r(&self) -> &TensorElement2 {
        &self.r
    }

    pub fn inverse(&self) -> &TensorElement2 {
        &self.r_inv
    }
}

/// Swaps the last two of three legs: `[a, c, b] → [a, b, c]`.
fn swap12(e: Expr) -> Expr {
    e.swap(3, 1, 2)
}

/// The four R-matrix conditions for the given flavor.
pub fn rmatrix_identities(s: SpaceId, r: &TensorElement2, flavor: Flavor) -> Vec<Identity> {
    let rr = || konst(s, r);
    let h = || vec![vec![s]];
    let a = |e: Expr, leg: usize, on: bool| if on { e.alpha(leg, 1) } else { e };
    let plain = flavor == Flavor::Plain;
    let (q3, q4) = if plain {
        (
            "R₁¹ ⊗ R₂¹ ⊗ α(R²) = α(r¹) ⊗ α(R¹) ⊗ r²R²",
            "α(R¹) ⊗ R₁² ⊗ R₂² = r¹R¹ ⊗ α(R²) ⊗ α(r²)",
        )
    } else {
        (
            "R₁¹ ⊗ R₂¹ ⊗ R² = r¹ ⊗ R¹ ⊗ r²R²",
            "R¹ ⊗ R₁² ⊗ R₂² = r¹R¹ ⊗ R² ⊗ r²",
        )
    };
    vec![
        Identity::new(
            "rmatrix.alpha-invariant",
            "(α⊗α)R = R",
            vec![],
            rr().alpha(0, 1).alpha(1, 1),
            rr(),
        ),
        Identity::new(
            "rmatrix.quasi-cocommutative",
            "RΔ(x) = Δ^op(x)R",
            h(),
            rr().tensor(Expr::input(0).comul(0)).mul(0, 2).mul(1, 2),
            Expr::input(0)
                .comul(0)
                .swap(2, 0, 1)
                .tensor(rr())
                .mul(0, 2)
                .mul(1, 2),
        ),
        Identity::new(
            "rmatrix.comul-left",
            q3,
            vec![],
            a(rr().comul(0), 2, plain),
            a(a(swap12(rr().tensor(rr()).mul(1, 3)), 0, plain), 1, plain),
        ),
        Identity::new(
            "rmatrix.comul-right",
            q4,
            vec![],
            a(rr().comul(1), 0, plain),
            a(a(swap12(rr().tensor(rr()).mul(0, 2)), 1, plain), 2, plain),
        ),
    ]
}

/// Checks an R-matrix candidate against the axiom system of `h`'s flavor.
pub fn validate_rmatrix(h: &HomBialgebra, name: &str, r: TensorElement2) -> Result<RMatrix> {
    let (ctx, s) = h.context();
    let mut report = VerificationReport::new();
    let inv = match invert_tensor2(h, &r) {
        Ok(x) => {
            report.push(CheckRecord::pass(
                "rmatrix.invertible",
                "R has a two-sided inverse",
            ));
            Some(x)
        }
        Err(e) => {
            report.push(CheckRecord::fail(
                "rmatrix.invertible",
                "R has a two-sided inverse",
                e.to_string(),
            ));
            None
        }
    };
    report.extend(run(&ctx, &rmatrix_identities(s, &r, h.flavor())));
    match inv {
        Some(r_inv) if report.all_passed() => Ok(RMatrix {
            name: name.to_string(),
            r,
            r_inv,
            flavor: h.flavor(),
            report,
        }),
        _ => Err(Error::Rejected(Box::new(report))),
    }
}

/// Componentwise product of two three-leg values.
fn prod3(x: Expr, y: Expr) -> Expr {
    x.tensor(y).mul(0, 3).mul(1, 3).mul(2, 3)
}

/// Both quantum Hom-Yang-Baxter equations, with `R₁₃ = (τ⊗id)R₂₃`, and a
/// comparison of that `R₁₃` with `R¹ ⊗ 1 ⊗ R²`.
pub fn check_qhybe(h: &HomBialgebra, rm: &RMatrix) -> VerificationReport {
    let (ctx, s) = h.context();
    let rr = || konst(s, &rm.r);
    let one = || Expr::unit(s);
    let r12 = || rr().tensor(one());
    let r23 = || one().tensor(rr());
    let r13 = || r23().swap(3, 0, 1);
    let mut report = run(
        &ctx,
        &[
            Identity::new(
                "qhybe.first",
                "(R₁₂R₁₃)R₂₃ = R₂₃(R₁₃R₁₂)",
                vec![],
                prod3(prod3(r12(), r13()), r23()),
                prod3(r23(), prod3(r13(), r12())),
            ),
            Identity::new(
                "qhybe.second",
                "R₁₂(R₁₃R₂₃) = (R₂₃R₁₃)R₁₂",
                vec![],
                prod3(r12(), prod3(r13(), r23())),
                prod3(prod3(r23(), r13()), r12()),
            ),
        ],
    );
    let printed = apply_sweedler(&ctx, &r13(), &[]);
    let conventional = apply_sweedler(&ctx, &swap12(r12()), &[]);
    let id = "qhybe.r13-reading";
    let anchor = "(τ⊗id)R₂₃ = R¹ ⊗ 1 ⊗ R²";
    report.push(match (printed, conventional) {
        (Ok(a), Ok(b)) if a == b => CheckRecord::pass(id, anchor),
        (Ok(a), Ok(b)) => CheckRecord::note(
            id,
            anchor,
            format!("readings differ: {} vs {}", ctx.render(&a), ctx.render(&b)),
        ),
        (Err(e), _) | (_, Err(e)) => CheckRecord::fail(id, anchor, e.to_string()),
    });
    report
}

/// Attaches a classical R-matrix with `(α⊗α)R = R` to the monoidal lift of `a`.
pub fn lift_rmatrix(
    a: &HomBialgebra,
    r: TensorElement2,
    alpha: &LinearMap,
) -> Result<(HomBialgebra, RMatrix)> {
    let classical = validate_rmatrix(a, "R", r.clone())?;
    let powers = crate::exact::SparseMap::from_linear(alpha);
    let moved = r.map_legs(&[&powers, &powers]);
    if moved != r {
        let diff = moved.sub(&r);
        let (k, c) = diff.iter().next().expect("nonzero difference");
        return Err(Error::precondition(format!(
            "(α⊗α)R ≠ R: coefficient of {}⊗{} changes by {c}",
            a.basis()[k[0] as usize],
            a.basis()[k[1] as usize]
        )));
    }
    let h = lift_monoidal(a, alpha)?;
    match validate_rmatrix(&h, &classical.name, r) {
        Ok(rm) => Ok((h, rm)),
        Err(Error::Rejected(rep)) => Err(Error::TheoremViolation(rep)),
        Err(e) => Err(e),
    }
}

/// `R^σ = (σ₂₁R)ϱ`, validated as an R-matrix of `hs = H^σ`.
pub fn twist_rmatrix(
    h: &HomBialgebra,
    tw: &Twist,
    rm: &RMatrix,
    hs: &HomBialgebra,
) -> Result<RMatrix> {
    if h.flavor() != Flavor::Monoidal || rm.flavor != Flavor::Monoidal {
        return Err(Error::FlavorMismatch(
            "twisting an R-matrix needs a monoidal parent".into(),
        ));
    }
    let (ctx, s) = h.context();
    let expr = konst(s, tw.sigma())
        .swap(2, 0, 1)
        .tensor(konst(s, &rm.r))
        .mul(0, 2)
        .mul(1, 2)
        .tensor(konst(s, tw.rho()))
        .mul(0, 2)
        .mul(1, 2);
    let n = h.dim();
    let rs = apply_sweedler(&ctx, &expr, &[])?.to_tensor([n, n]);
    match validate_rmatrix(hs, &format!("{}^{}", rm.name, tw.name), rs) {
        Ok(out) => {
            let q = check_qhybe(hs, &out);
            if q.all_passed() {
                Ok(out)
            } else {
                Err(Error::TheoremViolation(Box::new(q)))
            }
        }
        Err(Error::Rejected(rep)) => Err(Error::TheoremViolation(rep)),
        Err(e) => Err(e),
    }
}

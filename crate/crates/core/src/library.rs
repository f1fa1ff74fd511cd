//! Built-in instances: group algebras of cyclic groups with a power automorphism
//! and Sweedler's four-dimensional Hopf algebra with a scaling automorphism,
//! together with their twists, R-matrices, module algebras, and module coalgebras.

use std::sync::OnceLock;

use num_integer::Integer;

use crate::correspondence::{lift_monoidal, lift_plain};
use crate::error::{Error, Result};
use crate::exact::{
    apply_sweedler, BilinearMap, CoproductMap, Expr, LinearMap, Multi, Scalar, TensorElement2,
    Vector,
};
use crate::quasitriangular::{validate_rmatrix, RMatrix};
use crate::structures::{BialgebraParts, Flavor, HomBialgebra, ModuleAlgebra, ModuleCoalgebra};
use crate::twist::{validate_twist, Twist};

/// A classical bialgebra, an automorphism, both lifts, and validated extras.
#[derive(Clone, Debug)]
pub struct NamedInstance {
    pub name: String,
    pub classical: HomBialgebra,
    pub automorphism: LinearMap,
    pub monoidal: HomBialgebra,
    pub plain: HomBialgebra,
    /// Twists of the monoidal lift.
    pub twists: Vec<Twist>,
    /// R-matrices of the monoidal lift.
    pub rmatrices: Vec<RMatrix>,
    /// The same R-matrices validated against the plain lift.
    pub plain_rmatrices: Vec<RMatrix>,
    pub module_algebras: Vec<ModuleAlgebra>,
    pub module_coalgebras: Vec<ModuleCoalgebra>,
    /// Where each attached component comes from.
    pub notes: Vec<String>,
}

impl NamedInstance {
    pub fn twist(&self, name: &str) -> Result<&Twist> {
        self.twists
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn rmatrix(&self, name: &str) -> Result<&RMatrix> {
        self.rmatrices
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}

fn q(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn half() -> Scalar {
    Scalar::new(1, 2)
}

fn tensor2(n: usize, terms: &[(usize, usize, Scalar)]) -> TensorElement2 {
    TensorElement2::from_terms([n, n], terms.iter().map(|(a, b, c)| ([*a, *b], c.clone())))
        .expect("in range")
}

fn perm_matrix(n: usize, f: impl Fn(usize) -> (usize, Scalar)) -> LinearMap {
    let mut m = LinearMap::zero(n, n);
    for j in 0..n {
        let (i, c) = f(j);
        m[(i, j)] = c;
    }
    m
}

/// `½(1⊗1 + 1⊗h + h⊗1 − h⊗h)` for an involutive grouplike `h` at index `hi`.
fn bicharacter(n: usize, hi: usize) -> TensorElement2 {
    tensor2(
        n,
        &[
            (0, 0, half()),
            (0, hi, half()),
            (hi, 0, half()),
            (hi, hi, -half()),
        ],
    )
}

/// `ℚ[ℤ/n]` as an ordinary Hopf algebra, basis `1, g, g2, …`.
pub fn group_algebra(n: usize) -> HomBialgebra {
    let basis = (0..n)
        .map(|a| match a {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{a}"),
        })
        .collect();
    let product = BilinearMap::from_entries(
        n,
        n,
        n,
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b, (a + b) % n, q(1)))),
    )
    .expect("in range");
    let coproduct =
        CoproductMap::from_entries(n, (0..n).map(|a| (a, a, a, q(1)))).expect("in range");
    let antipode = perm_matrix(n, |a| ((n - a) % n, q(1)));
    HomBialgebra::new(BialgebraParts {
        name: format!("Q[Z/{n}]"),
        basis,
        flavor: Flavor::Plain,
        product,
        unit: Vector::basis(n, 0),
        coproduct,
        counit: vec![q(1); n],
        alpha: LinearMap::identity(n),
        antipode: Some(antipode),
    })
    .expect("valid")
}

/// Sweedler's algebra `⟨g, x | g² = 1, x² = 0, xg = −gx⟩`, basis `1, g, x, gx`.
pub fn sweedler_algebra() -> HomBialgebra {
    // (left, right, target, coefficient)
    let table: [(usize, usize, usize, i64); 12] = [
        (0, 0, 0, 1),
        (0, 1, 1, 1),
        (0, 2, 2, 1),
        (0, 3, 3, 1),
        (1, 0, 1, 1),
        (1, 1, 0, 1),
        (1, 2, 3, 1),
        (1, 3, 2, 1),
        (2, 0, 2, 1),
        (2, 1, 3, -1),
        (3, 0, 3, 1),
        (3, 1, 2, -1),
    ];
    let product =
        BilinearMap::from_entries(4, 4, 4, table.iter().map(|&(a, b, c, k)| (a, b, c, q(k))))
            .expect("in range");
    let coproduct = CoproductMap::from_entries(
        4,
        [
            (0, 0, 0, q(1)),
            (1, 1, 1, q(1)),
            (2, 2, 0, q(1)),
            (2, 1, 2, q(1)),
            (3, 3, 1, q(1)),
            (3, 0, 3, q(1)),
        ],
    )
    .expect("in range");
    let antipode = perm_matrix(4, |j| match j {
        0 => (0, q(1)),
        1 => (1, q(1)),
        2 => (3, q(-1)),
        _ => (2, q(1)),
    });
    HomBialgebra::new(BialgebraParts {
        name: "H4".into(),
        basis: ["1", "g", "x", "gx"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        flavor: Flavor::Plain,
        product,
        unit: Vector::basis(4, 0),
        coproduct,
        counit: vec![q(1), q(1), q(0), q(0)],
        alpha: LinearMap::identity(4),
        antipode: Some(antipode),
    })
    .expect("valid")
}

/// `h ▷ b = ε(h)b`.
fn counit_action(a: &HomBialgebra) -> BilinearMap {
    let n = a.dim();
    let entries = a
        .counit()
        .iter()
        .enumerate()
        .flat_map(|(i, e)| (0..n).map(move |b| (i, b, b, e.clone())))
        .collect::<Vec<_>>();
    BilinearMap::from_entries(n, n, n, entries).expect("in range")
}

/// `h ▷ b = h₁ b S(h₂)`.
fn adjoint_action(a: &HomBialgebra) -> Result<BilinearMap> {
    let (ctx, s) = a.context();
    let expr = Expr::input(0)
        .comul(0)
        .antipode(1)
        .tensor(Expr::input(1))
        .mul(0, 2)
        .mul(0, 1);
    let n = a.dim();
    let mut entries = Vec::new();
    for h in 0..n {
        for b in 0..n {
            let v = apply_sweedler(
                &ctx,
                &expr,
                &[Multi::basis(&[s], &[h]), Multi::basis(&[s], &[b])],
            )?
            .to_vector(n);
            entries.extend(v.support().map(|(k, c)| (h, b, k, c.clone())));
        }
    }
    BilinearMap::from_entries(n, n, n, entries)
}

/// `g^a ▷ g^b = (−1)^{ab} g^b` on `ℚ[ℤ/n]`, `n` even.
fn sign_action(n: usize) -> BilinearMap {
    let entries = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b, b, q(if (a * b) % 2 == 0 { 1 } else { -1 }))));
    BilinearMap::from_entries(n, n, n, entries).expect("in range")
}

fn module_algebra(
    inst: &HomBialgebra,
    a: &HomBialgebra,
    beta: &LinearMap,
    name: &str,
    action: &BilinearMap,
) -> Result<ModuleAlgebra> {
    ModuleAlgebra::from_classical(
        name,
        inst,
        a.basis().to_vec(),
        a.product(),
        a.parts().unit,
        beta.clone(),
        action,
    )
}

fn module_coalgebra(
    inst: &HomBialgebra,
    a: &HomBialgebra,
    beta: &LinearMap,
    name: &str,
    action: &BilinearMap,
) -> Result<ModuleCoalgebra> {
    ModuleCoalgebra::from_classical(
        name,
        inst,
        a.basis().to_vec(),
        a.coproduct(),
        a.counit().to_vec(),
        beta.clone(),
        action,
    )
}

struct Extras {
    twists: Vec<(&'static str, TensorElement2, &'static str)>,
    rmatrices: Vec<(&'static str, TensorElement2, &'static str)>,
    algebra_actions: Vec<(&'static str, BilinearMap)>,
}

fn assemble(
    name: &str,
    classical: HomBialgebra,
    alpha: LinearMap,
    extras: Extras,
) -> Result<NamedInstance> {
    let monoidal = lift_monoidal(&classical, &alpha)?.renamed(format!("{name}-monoidal"));
    let plain = lift_plain(&classical, &alpha)?.renamed(format!("{name}-plain"));
    let mut notes = vec![format!(
        "{name}: structure constants of {} with automorphism α",
        classical.name()
    )];
    let mut twists = Vec::new();
    for (tname, sigma, note) in extras.twists {
        twists.push(validate_twist(&monoidal, tname, sigma)?);
        notes.push(format!("twist {tname}: {note}"));
    }
    let mut rmatrices = Vec::new();
    let mut plain_rmatrices = Vec::new();
    for (rname, r, note) in extras.rmatrices {
        rmatrices.push(validate_rmatrix(&monoidal, rname, r.clone())?);
        plain_rmatrices.push(validate_rmatrix(&plain, rname, r)?);
        notes.push(format!("R-matrix {rname}: {note}"));
    }
    let mut module_algebras = Vec::new();
    for (aname, action) in &extras.algebra_actions {
        module_algebras.push(module_algebra(
            &monoidal, &classical, &alpha, aname, action,
        )?);
    }
    let module_coalgebras = vec![
        module_coalgebra(
            &monoidal,
            &classical,
            &alpha,
            "coalgebra-trivial",
            &counit_action(&classical),
        )?,
        module_coalgebra(
            &monoidal,
            &classical,
            &alpha,
            "coalgebra-regular",
            classical.product(),
        )?,
    ];
    Ok(NamedInstance {
        name: name.to_string(),
        classical,
        automorphism: alpha,
        monoidal,
        plain,
        twists,
        rmatrices,
        plain_rmatrices,
        module_algebras,
        module_coalgebras,
        notes,
    })
}

/// `ℚ[ℤ/n]` with `α(g) = g^m`. For even `n` the bicharacter of the subgroup
/// of order two is attached as a twist and as an R-matrix.
pub fn instance_group_algebra(n: usize, m: i64) -> Result<NamedInstance> {
    if n == 0 || (m.rem_euclid(n as i64) as usize).gcd(&n) != 1 {
        return Err(Error::precondition(format!(
            "α(g) = g^{m} is not an automorphism of Z/{n}"
        )));
    }
    let a = group_algebra(n);
    let mm = m.rem_euclid(n as i64) as usize;
    let alpha = perm_matrix(n, |j| ((j * mm) % n, q(1)));
    let one = a.one_tensor_one();
    let mut extras = Extras {
        twists: vec![("trivial", one.clone(), "1⊗1")],
        rmatrices: vec![(
            "trivial",
            one,
            "1⊗1, valid since the algebra is commutative and cocommutative",
        )],
        algebra_actions: vec![("algebra-trivial", counit_action(&a))],
    };
    if n.is_multiple_of(2) {
        let b = bicharacter(n, n / 2);
        extras.twists.push((
            "bicharacter",
            b.clone(),
            "bicharacter of the subgroup of order two",
        ));
        extras
            .rmatrices
            .push(("bicharacter", b, "bicharacter of the subgroup of order two"));
        extras
            .algebra_actions
            .push(("algebra-sign", sign_action(n)));
    }
    assemble(&format!("z{n}-m{m}"), a, alpha, extras)
}

/// Sweedler's algebra with `α(g) = g`, `α(x) = λx`. The grouplike R-matrix is
/// always attached, also as a twist; when `λ² = 1` a mixed R-matrix and a
/// twist supported on `x`-terms are too.
pub fn instance_sweedler(lambda: Scalar) -> Result<NamedInstance> {
    if lambda.is_zero() {
        return Err(Error::AlphaNotInvertible);
    }
    let a = sweedler_algebra();
    let l = lambda.clone();
    let alpha = perm_matrix(4, |j| (j, if j < 2 { q(1) } else { l.clone() }));
    let r0 = bicharacter(4, 1);
    let mut extras = Extras {
        twists: vec![
            ("trivial", a.one_tensor_one(), "1⊗1"),
            (
                "grouplike",
                r0.clone(),
                "bicharacter of the grouplike subalgebra ⟨g⟩",
            ),
        ],
        rmatrices: vec![("grouplike", r0.clone(), "½(1⊗1 + 1⊗g + g⊗1 − g⊗g)")],
        algebra_actions: vec![
            ("algebra-trivial", counit_action(&a)),
            ("algebra-adjoint", adjoint_action(&a)?),
        ],
    };
    if (&lambda * &lambda).is_one() {
        extras.twists.push((
            "nilpotent",
            tensor2(4, &[(0, 0, q(1)), (3, 2, q(1))]),
            "1⊗1 + gx⊗x, a point of the solver-derived family 1⊗1 + t·gx⊗x",
        ));
        let mut r1 = r0;
        for (i, j, c) in [
            (2, 2, half()),
            (2, 3, -half()),
            (3, 2, half()),
            (3, 3, half()),
        ] {
            r1.add_term([i as u16, j as u16], c);
        }
        extras.rmatrices.push((
            "mixed",
            r1,
            "grouplike part plus ½(x⊗x − x⊗gx + gx⊗x + gx⊗gx), solver-derived",
        ));
    }
    let name = if lambda.is_one() {
        "sweedler-classical".to_string()
    } else if lambda == q(-1) {
        "sweedler".to_string()
    } else {
        format!("sweedler-lambda{lambda}").replace('/', "_")
    };
    assemble(&name, a, alpha, extras)
}

/// Names accepted by [`instance`].
pub const NAMES: [&str; 5] = [
    "z2",
    "z4",
    "sweedler",
    "sweedler-classical",
    "sweedler-lambda2",
];

fn build(name: &str) -> Result<NamedInstance> {
    let mut inst = match name {
        "z2" => instance_group_algebra(2, 1)?,
        "z4" => instance_group_algebra(4, 3)?,
        "sweedler" => instance_sweedler(q(-1))?,
        "sweedler-classical" => instance_sweedler(q(1))?,
        "sweedler-lambda2" => instance_sweedler(q(2))?,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    inst.name = name.to_string();
    inst.monoidal = inst.monoidal.renamed(format!("{name}-monoidal"));
    inst.plain = inst.plain.renamed(format!("{name}-plain"));
    Ok(inst)
}

/// Every built-in instance, validated once. Panics if any attached candidate
/// fails validation.
pub fn library() -> &'static [NamedInstance] {
    static LIB: OnceLock<Vec<NamedInstance>> = OnceLock::new();
    LIB.get_or_init(|| {
        NAMES
            .iter()
            .map(|n| build(n).unwrap_or_else(|e| panic!("library instance {n}: {e}")))
            .collect()
    })
}

pub fn instance(name: &str) -> Result<&'static NamedInstance> {
    library()
        .iter()
        .find(|i| i.name == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

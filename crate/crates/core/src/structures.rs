//! Hom-bialgebras, Hom-modules, module algebras, and module coalgebras given by
//! structure constants.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    AlphaPowers, BilinearMap, Context, CoproductMap, LinearMap, Scalar, Space, SpaceId, SparseMap,
    TensorElement2, Vector, DEFAULT_WINDOW,
};

/// Which coalgebra axioms the structure map enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Counit and coassociativity twisted by `α^{-1}`; `α` must be invertible.
    Monoidal,
    /// Counit and coassociativity twisted by `α`.
    Plain,
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Monoidal => "monoidal",
            Flavor::Plain => "plain",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monoidal" => Ok(Flavor::Monoidal),
            "plain" => Ok(Flavor::Plain),
            _ => Err(Error::Parse(format!("unknown flavor `{s}`"))),
        }
    }
}

/// Raw ingredients of a [`HomBialgebra`].
#[derive(Clone, Debug)]
pub struct BialgebraParts {
    pub name: String,
    pub basis: Vec<String>,
    pub flavor: Flavor,
    pub product: BilinearMap,
    pub unit: Vector,
    pub coproduct: CoproductMap,
    pub counit: Vec<Scalar>,
    pub alpha: LinearMap,
    pub antipode: Option<LinearMap>,
}

/// `(H, α, m, η, Δ, ε)` with an optional antipode.
///
/// A classical bialgebra is the special case `α = id`, flavor plain.
#[derive(Clone)]
pub struct HomBialgebra {
    name: String,
    basis: Arc<Vec<String>>,
    flavor: Flavor,
    product: Arc<BilinearMap>,
    unit: Arc<Vector>,
    coproduct: Arc<CoproductMap>,
    counit: Arc<Vec<Scalar>>,
    alpha: LinearMap,
    powers: Arc<AlphaPowers>,
    antipode: Option<(LinearMap, Arc<SparseMap>)>,
}

impl HomBialgebra {
    pub fn new(parts: BialgebraParts) -> Result<Self> {
        Self::with_window(parts, DEFAULT_WINDOW)
    }

    pub fn with_window(parts: BialgebraParts, window: i32) -> Result<Self> {
        let n = parts.basis.len();
        if n == 0 {
            return Err(Error::mismatch("empty basis"));
        }
        if parts.product.dims() != (n, n, n) {
            return Err(Error::mismatch(format!(
                "product has shape {:?}, expected {n}",
                parts.product.dims()
            )));
        }
        if parts.unit.dim() != n || parts.counit.len() != n || parts.coproduct.dim() != n {
            return Err(Error::mismatch(
                "unit, counit, and coproduct must share the basis dimension",
            ));
        }
        if (parts.alpha.rows(), parts.alpha.cols()) != (n, n) {
            return Err(Error::mismatch("structure map has the wrong shape"));
        }
        if let Some(s) = &parts.antipode {
            if (s.rows(), s.cols()) != (n, n) {
                return Err(Error::mismatch("antipode has the wrong shape"));
            }
        }
        let powers = Arc::new(AlphaPowers::new(&parts.alpha, window)?);
        Ok(HomBialgebra {
            name: parts.name,
            basis: Arc::new(parts.basis),
            flavor: parts.flavor,
            product: Arc::new(parts.product),
            unit: Arc::new(parts.unit),
            coproduct: Arc::new(parts.coproduct),
            counit: Arc::new(parts.counit),
            antipode: parts.antipode.map(|s| {
                let sp = Arc::new(SparseMap::from_linear(&s));
                (s, sp)
            }),
            alpha: parts.alpha,
            powers,
        })
    }

    pub fn parts(&self) -> BialgebraParts {
        BialgebraParts {
            name: self.name.clone(),
            basis: (*self.basis).clone(),
            flavor: self.flavor,
            product: (*self.product).clone(),
            unit: (*self.unit).clone(),
            coproduct: (*self.coproduct).clone(),
            counit: (*self.counit).clone(),
            alpha: self.alpha.clone(),
            antipode: self.antipode.as_ref().map(|(s, _)| s.clone()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn product(&self) -> &BilinearMap {
        &self.product
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn coproduct(&self) -> &CoproductMap {
        &self.coproduct
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }

    pub fn alpha_powers(&self) -> &AlphaPowers {
        &self.powers
    }

    pub fn alpha_pow(&self, p: i32) -> Result<&SparseMap> {
        self.powers.get(p)
    }

    pub fn window(&self) -> i32 {
        self.powers.window()
    }

    pub fn antipode(&self) -> Option<&LinearMap> {
        self.antipode.as_ref().map(|(s, _)| s)
    }

    pub fn is_alpha_identity(&self) -> bool {
        self.alpha.is_identity()
    }

    /// Same carrier and constants under a new label.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut h = self.clone();
        h.name = name.into();
        h
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Self {
        let mut h = self.clone();
        h.flavor = flavor;
        h
    }

    pub fn with_coproduct(&self, coproduct: CoproductMap) -> Result<Self> {
        let mut p = self.parts();
        p.coproduct = coproduct;
        Self::with_window(p, self.window())
    }

    pub fn with_antipode(&self, antipode: Option<LinearMap>) -> Result<Self> {
        let mut p = self.parts();
        p.antipode = antipode;
        Self::with_window(p, self.window())
    }

    pub fn with_alpha_window(&self, window: i32) -> Result<Self> {
        Self::with_window(self.parts(), window)
    }

    /// First structure component that differs from `other`, if any.
    pub fn structure_diff(&self, other: &HomBialgebra) -> Option<&'static str> {
        if self.basis.len() != other.basis.len() {
            return Some("dimension");
        }
        if self.flavor != other.flavor {
            return Some("flavor");
        }
        if self.product != other.product {
            return Some("product");
        }
        if self.unit != other.unit {
            return Some("unit");
        }
        if self.coproduct != other.coproduct {
            return Some("coproduct");
        }
        if self.counit != other.counit {
            return Some("counit");
        }
        if self.alpha != other.alpha {
            return Some("alpha");
        }
        if self.antipode() != other.antipode() {
            return Some("antipode");
        }
        None
    }

    pub fn same_structure(&self, other: &HomBialgebra) -> bool {
        self.structure_diff(other).is_none()
    }

    pub fn space(&self) -> Space {
        Space {
            name: self.name.clone(),
            basis: self.basis.clone(),
            alpha: self.powers.clone(),
            product: Some(self.product.clone()),
            unit: Some(self.unit.clone()),
            coproduct: Some(self.coproduct.clone()),
            counit: Some(self.counit.clone()),
            antipode: self.antipode.as_ref().map(|(_, s)| s.clone()),
        }
    }

    /// A context holding just this algebra.
    pub fn context(&self) -> (Context, SpaceId) {
        let mut ctx = Context::new();
        let id = ctx.add_space(self.space());
        (ctx, id)
    }

    pub fn one_tensor_one(&self) -> TensorElement2 {
        TensorElement2::pure([&self.unit, &self.unit])
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.product.apply(a, b)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    /// Index of a basis element by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }
}

impl fmt::Debug for HomBialgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomBialgebra")
            .field("name", &self.name)
            .field("flavor", &self.flavor)
            .field("basis", &self.basis)
            .finish_non_exhaustive()
    }
}

/// A left Hom-module `(M, α_M)` over some Hom-bialgebra, given by its action tensor.
///
/// The acting algebra is passed explicitly wherever it is needed.
#[derive(Clone)]
pub struct HomModule {
    pub name: String,
    basis: Arc<Vec<String>>,
    action: Arc<BilinearMap>,
    alpha: LinearMap,
    powers: Arc<AlphaPowers>,
}

impl HomModule {
    pub fn new(
        name: impl Into<String>,
        basis: Vec<String>,
        action: BilinearMap,
        alpha: LinearMap,
        window: i32,
    ) -> Result<Self> {
        let n = basis.len();
        let (_, b, c) = action.dims();
        if b != n || c != n || (alpha.rows(), alpha.cols()) != (n, n) {
            return Err(Error::mismatch(
                "module action and structure map must share the module dimension",
            ));
        }
        let powers = AlphaPowers::new(&alpha, window)?;
        if !powers.is_invertible() {
            return Err(Error::AlphaNotInvertible);
        }
        Ok(HomModule {
            name: name.into(),
            basis: Arc::new(basis),
            action: Arc::new(action),
            alpha,
            powers: Arc::new(powers),
        })
    }

    /// `k` with `h · λ = ε(h)λ` and identity structure map.
    pub fn trivial(h: &HomBialgebra) -> Self {
        let entries = h
            .counit()
            .iter()
            .enumerate()
            .map(|(i, e)| (i, 0, 0, e.clone()));
        let action = BilinearMap::from_entries(h.dim(), 1, 1, entries).expect("in range");
        Self::new(
            "k",
            vec!["1".into()],
            action,
            LinearMap::identity(1),
            h.window(),
        )
        .expect("valid")
    }

    /// `H` acting on itself by multiplication, with `α_M = α`.
    pub fn regular(h: &HomBialgebra) -> Result<Self> {
        Self::new(
            "regular",
            h.basis().to_vec(),
            h.product().clone(),
            h.alpha().clone(),
            h.window(),
        )
    }

    /// The regular module written in a seeded random unipotent basis.
    pub fn random(h: &HomBialgebra, seed: u64) -> Result<Self> {
        let n = h.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut p = LinearMap::identity(n);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    p[(i, j)] = Scalar::from_int(rng.gen_range(-2..=2));
                }
            }
        }
        let basis = (0..n).map(|i| format!("v{i}")).collect();
        Self::regular(h)?.conjugate(&p, "random", basis)
    }

    /// The same module in the basis given by the columns of `p^{-1}`: `m ↦ p·m`.
    pub fn conjugate(&self, p: &LinearMap, name: &str, basis: Vec<String>) -> Result<Self> {
        let pinv = p.inverse()?;
        let alpha = p.compose(&self.alpha)?.compose(&pinv)?;
        let (hd, n, _) = self.action.dims();
        let ps = SparseMap::from_linear(p);
        let pinvs = SparseMap::from_linear(&pinv);
        let action = self
            .action
            .precompose(&SparseMap::identity(hd), &pinvs)
            .then(&ps);
        debug_assert_eq!(action.dims(), (hd, n, n));
        Self::new(name, basis, action, alpha, self.powers.window())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn action(&self) -> &BilinearMap {
        &self.action
    }

    pub fn action_arc(&self) -> Arc<BilinearMap> {
        self.action.clone()
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }

    pub fn alpha_powers(&self) -> &AlphaPowers {
        &self.powers
    }

    pub fn space(&self) -> Space {
        Space::plain(self.name.clone(), self.basis.clone(), self.powers.clone())
    }
}

impl fmt::Debug for HomModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomModule")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .finish_non_exhaustive()
    }
}

/// A Hom-module whose carrier is also a monoidal Hom-algebra with structure map `α_M`.
#[derive(Clone, Debug)]
pub struct ModuleAlgebra {
    pub module: HomModule,
    pub product: Arc<BilinearMap>,
    pub unit: Arc<Vector>,
}

/// A Hom-module whose carrier is also a monoidal Hom-coalgebra with structure map `α_M`.
#[derive(Clone, Debug)]
pub struct ModuleCoalgebra {
    pub module: HomModule,
    pub coproduct: Arc<CoproductMap>,
    pub counit: Arc<Vec<Scalar>>,
}

/// Hom-action `h ▷ b = ρ(α(h), β(b))` obtained from a classical action `ρ` that
/// intertwines `α` and `β`.
fn hom_action(h: &HomBialgebra, classical: &BilinearMap, beta: &LinearMap) -> BilinearMap {
    classical.precompose(
        &SparseMap::from_linear(h.alpha()),
        &SparseMap::from_linear(beta),
    )
}

impl ModuleAlgebra {
    /// Builds a module algebra over a monoidal lift from classical data: an
    /// algebra `(B, m_B, 1)`, an automorphism `β`, and a classical module-algebra
    /// action `ρ` with `β(ρ(a, b)) = ρ(α(a), β(b))`. The carrier gets product
    /// `β ∘ m_B`, structure map `β`, and action `ρ(α(h), β(b))`.
    pub fn from_classical(
        name: &str,
        h: &HomBialgebra,
        basis: Vec<String>,
        product: &BilinearMap,
        unit: Vector,
        beta: LinearMap,
        action: &BilinearMap,
    ) -> Result<Self> {
        let hom_product = product.then(&SparseMap::from_linear(&beta));
        let act = hom_action(h, action, &beta);
        let module = HomModule::new(name, basis, act, beta, h.window())?;
        Ok(ModuleAlgebra {
            module,
            product: Arc::new(hom_product),
            unit: Arc::new(unit),
        })
    }

    pub fn name(&self) -> &str {
        &self.module.name
    }

    pub fn space(&self) -> Space {
        let mut s = self.module.space();
        s.product = Some(self.product.clone());
        s.unit = Some(self.unit.clone());
        s
    }
}

impl ModuleCoalgebra {
    /// Coalgebra counterpart of [`ModuleAlgebra::from_classical`]: the carrier
    /// gets coproduct `Δ_C ∘ β^{-1}`, the same counit, and action `ρ(α(h), β(c))`.
    pub fn from_classical(
        name: &str,
        h: &HomBialgebra,
        basis: Vec<String>,
        coproduct: &CoproductMap,
        counit: Vec<Scalar>,
        beta: LinearMap,
        action: &BilinearMap,
    ) -> Result<Self> {
        let binv = beta.inverse().map_err(|_| Error::AlphaNotInvertible)?;
        let hom_coproduct = coproduct.precompose(&SparseMap::from_linear(&binv));
        let act = hom_action(h, action, &beta);
        let module = HomModule::new(name, basis, act, beta, h.window())?;
        Ok(ModuleCoalgebra {
            module,
            coproduct: Arc::new(hom_coproduct),
            counit: Arc::new(counit),
        })
    }

    pub fn name(&self) -> &str {
        &self.module.name
    }

    pub fn space(&self) -> Space {
        let mut s = self.module.space();
        s.coproduct = Some(self.coproduct.clone());
        s.counit = Some(self.counit.clone());
        s
    }
}

/// A carrier with a product, unit, and structure map, such as a twisted module algebra.
#[derive(Clone, Debug)]
pub struct HomAlgebra {
    pub name: String,
    pub basis: Arc<Vec<String>>,
    pub product: Arc<BilinearMap>,
    pub unit: Arc<Vector>,
    pub alpha: LinearMap,
}

impl HomAlgebra {
    pub fn space(&self) -> Result<Space> {
        let powers = AlphaPowers::new(&self.alpha, DEFAULT_WINDOW)?;
        let mut s = Space::plain(self.name.clone(), self.basis.clone(), Arc::new(powers));
        s.product = Some(self.product.clone());
        s.unit = Some(self.unit.clone());
        Ok(s)
    }
}

/// An ordinary coalgebra (no structure map), such as a twisted module coalgebra.
#[derive(Clone, Debug)]
pub struct Coalgebra {
    pub name: String,
    pub basis: Arc<Vec<String>>,
    pub coproduct: Arc<CoproductMap>,
    pub counit: Arc<Vec<Scalar>>,
}

impl Coalgebra {
    pub fn space(&self) -> Space {
        let n = self.basis.len();
        let powers = AlphaPowers::new(&LinearMap::identity(n), DEFAULT_WINDOW).expect("identity");
        let mut s = Space::plain(self.name.clone(), self.basis.clone(), Arc::new(powers));
        s.coproduct = Some(self.coproduct.clone());
        s.counit = Some(self.counit.clone());
        s
    }
}

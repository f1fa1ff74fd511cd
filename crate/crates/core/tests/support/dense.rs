//! Naive dense evaluator for formula trees, used as an independent oracle.
//! Every value is a full coefficient array over the product basis.

use homtwist::{Context, Expr, Identity, LinearMap, Multi, Scalar, SpaceId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense {
    pub spaces: Vec<SpaceId>,
    pub dims: Vec<usize>,
    pub data: Vec<Scalar>,
}

fn decode(mut flat: usize, dims: &[usize]) -> Vec<usize> {
    let mut idx = vec![0; dims.len()];
    for l in (0..dims.len()).rev() {
        idx[l] = flat % dims[l];
        flat /= dims[l];
    }
    idx
}

fn encode(idx: &[usize], dims: &[usize]) -> usize {
    idx.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

impl Dense {
    pub fn zero(ctx: &Context, spaces: Vec<SpaceId>) -> Dense {
        let dims: Vec<usize> = spaces.iter().map(|&s| ctx.space(s).dim()).collect();
        let size = dims.iter().product();
        Dense {
            spaces,
            dims,
            data: vec![Scalar::from_int(0); size],
        }
    }

    pub fn from_multi(ctx: &Context, m: &Multi) -> Dense {
        let mut out = Dense::zero(ctx, m.spaces().to_vec());
        for (k, c) in m.terms() {
            let idx: Vec<usize> = k[..m.arity()].iter().map(|&x| x as usize).collect();
            let f = encode(&idx, &out.dims);
            out.data[f] += c;
        }
        out
    }

    pub fn basis(ctx: &Context, spaces: &[SpaceId], idx: &[usize]) -> Dense {
        let mut out = Dense::zero(ctx, spaces.to_vec());
        let f = encode(idx, &out.dims);
        out.data[f] = Scalar::from_int(1);
        out
    }

    fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(f, c)| (decode(f, &self.dims), c))
    }

    fn add_at(&mut self, idx: &[usize], c: Scalar) {
        let f = encode(idx, &self.dims);
        self.data[f] += &c;
    }

    /// Replaces one leg through a matrix `m` (rows index the new space).
    fn through(&self, ctx: &Context, leg: usize, m: &LinearMap, to: SpaceId) -> Dense {
        let mut spaces = self.spaces.clone();
        spaces[leg] = to;
        let mut out = Dense::zero(ctx, spaces);
        for (idx, c) in self.entries() {
            for r in 0..m.rows() {
                let a = &m[(r, idx[leg])];
                if !a.is_zero() {
                    let mut j = idx.clone();
                    j[leg] = r;
                    out.add_at(&j, c.clone() * a.clone());
                }
            }
        }
        out
    }
}

fn alpha_matrix(ctx: &Context, s: SpaceId, p: i32) -> LinearMap {
    let a = ctx.space(s).alpha.alpha().to_linear();
    a.pow(p).expect("power of α")
}

/// Evaluates `e` on dense inputs.
pub fn eval(ctx: &Context, e: &Expr, inputs: &[Dense]) -> Dense {
    match e {
        Expr::Input(k) => inputs[*k].clone(),
        Expr::Const(m) => Dense::from_multi(ctx, m),
        Expr::Unit(s) => {
            let u = ctx.space(*s).unit.clone().expect("unit");
            let mut out = Dense::zero(ctx, vec![*s]);
            for i in 0..u.dim() {
                out.data[i] = u[i].clone();
            }
            out
        }
        Expr::Tensor(a, b) => {
            let (x, y) = (eval(ctx, a, inputs), eval(ctx, b, inputs));
            let mut spaces = x.spaces.clone();
            spaces.extend(&y.spaces);
            let mut out = Dense::zero(ctx, spaces);
            for (i, c) in x.entries() {
                for (j, d) in y.entries() {
                    let mut k = i.clone();
                    k.extend(j);
                    out.add_at(&k, c.clone() * d.clone());
                }
            }
            out
        }
        Expr::Alpha { e, leg, power } => {
            let x = eval(ctx, e, inputs);
            let s = x.spaces[*leg];
            x.through(ctx, *leg, &alpha_matrix(ctx, s, *power), s)
        }
        Expr::Antipode { e, leg } => {
            let x = eval(ctx, e, inputs);
            let s = x.spaces[*leg];
            let m = ctx
                .space(s)
                .antipode
                .as_ref()
                .expect("antipode")
                .to_linear();
            x.through(ctx, *leg, &m, s)
        }
        Expr::Map { e, leg, map, to } => {
            eval(ctx, e, inputs).through(ctx, *leg, &map.to_linear(), *to)
        }
        Expr::Recast { e, leg, to } => {
            let mut x = eval(ctx, e, inputs);
            x.spaces[*leg] = *to;
            x
        }
        Expr::Counit { e, leg } => {
            let x = eval(ctx, e, inputs);
            let eps = ctx.space(x.spaces[*leg]).counit.clone().expect("counit");
            let mut spaces = x.spaces.clone();
            spaces.remove(*leg);
            let mut out = Dense::zero(ctx, spaces);
            for (mut idx, c) in x.entries() {
                let i = idx.remove(*leg);
                out.add_at(&idx, c.clone() * eps[i].clone());
            }
            out
        }
        Expr::Comul { e, leg } => {
            let x = eval(ctx, e, inputs);
            let s = x.spaces[*leg];
            let d = ctx.space(s).coproduct.clone().expect("coproduct");
            let mut spaces = x.spaces.clone();
            spaces.insert(*leg, s);
            let mut out = Dense::zero(ctx, spaces);
            let entries: Vec<_> = d
                .entries()
                .map(|(i, a, b, c)| (i, a, b, c.clone()))
                .collect();
            for (idx, c) in x.entries() {
                for (i, a, b, k) in &entries {
                    if *i == idx[*leg] {
                        let mut j = idx.clone();
                        j[*leg] = *a;
                        j.insert(*leg + 1, *b);
                        out.add_at(&j, c.clone() * k.clone());
                    }
                }
            }
            out
        }
        Expr::Mul { e, left, right } => {
            let x = eval(ctx, e, inputs);
            let s = x.spaces[*left];
            let p = ctx.space(s).product.clone().expect("product");
            let entries: Vec<_> = p
                .entries()
                .map(|(i, j, k, c)| (i, j, k, c.clone()))
                .collect();
            contract(ctx, &x, *left, *right, s, &entries)
        }
        Expr::Act { e, h, m } => {
            let x = eval(ctx, e, inputs);
            let ms = x.spaces[*m];
            let a = ctx.action(x.spaces[*h], ms).expect("action");
            let entries: Vec<_> = a
                .entries()
                .map(|(i, j, k, c)| (i, j, k, c.clone()))
                .collect();
            contract(ctx, &x, *h, *m, ms, &entries)
        }
        Expr::Permute { e, perm } => {
            let x = eval(ctx, e, inputs);
            let spaces = perm.iter().map(|&p| x.spaces[p]).collect();
            let mut out = Dense::zero(ctx, spaces);
            for (idx, c) in x.entries() {
                let j: Vec<usize> = perm.iter().map(|&p| idx[p]).collect();
                out.add_at(&j, c.clone());
            }
            out
        }
        Expr::Drop { e, leg } => {
            let x = eval(ctx, e, inputs);
            let mut spaces = x.spaces.clone();
            spaces.remove(*leg);
            let mut out = Dense::zero(ctx, spaces);
            out.data = x.data.clone();
            out
        }
        Expr::Insert { e, pos, space } => {
            let x = eval(ctx, e, inputs);
            let mut spaces = x.spaces.clone();
            spaces.insert(*pos, *space);
            let mut out = Dense::zero(ctx, spaces);
            out.data = x.data.clone();
            out
        }
        Expr::Scale { e, c } => {
            let mut x = eval(ctx, e, inputs);
            for v in &mut x.data {
                *v = v.clone() * c.clone();
            }
            x
        }
        Expr::Sum(parts) => {
            let mut it = parts.iter().map(|p| eval(ctx, p, inputs));
            let mut acc = it.next().expect("nonempty sum");
            for x in it {
                for (a, b) in acc.data.iter_mut().zip(&x.data) {
                    *a += b;
                }
            }
            acc
        }
    }
}

/// Bilinear contraction of legs `a` and `b` through `(i, j) ↦ Σ c·e_k`, the
/// result stored at `min(a, b)` in space `out`.
fn contract(
    ctx: &Context,
    x: &Dense,
    a: usize,
    b: usize,
    out_space: SpaceId,
    entries: &[(usize, usize, usize, Scalar)],
) -> Dense {
    let (lo, hi) = (a.min(b), a.max(b));
    let mut spaces = x.spaces.clone();
    spaces[lo] = out_space;
    spaces.remove(hi);
    let mut out = Dense::zero(ctx, spaces);
    for (idx, c) in x.entries() {
        for (i, j, k, w) in entries {
            if *i == idx[a] && *j == idx[b] {
                let mut t = idx.clone();
                t[lo] = *k;
                t.remove(hi);
                out.add_at(&t, c.clone() * w.clone());
            }
        }
    }
    out
}

/// Every basis tuple of an identity's inputs.
pub fn tuples(ctx: &Context, id: &Identity) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for spaces in &id.inputs {
        let dims: Vec<usize> = spaces.iter().map(|&s| ctx.space(s).dim()).collect();
        let total: usize = dims.iter().product();
        out = out
            .into_iter()
            .flat_map(|t| {
                let dims = dims.clone();
                (0..total).map(move |f| {
                    let mut t = t.clone();
                    t.push(decode(f, &dims));
                    t
                })
            })
            .collect();
    }
    out
}

/// Compares the sparse engine with the dense evaluator on both sides of `id`
/// for every basis tuple. Returns the number of tuples compared.
pub fn agree(ctx: &Context, id: &Identity) -> Result<usize, String> {
    let ts = tuples(ctx, id);
    for t in &ts {
        let sparse_in = id.basis_inputs(t);
        let dense_in: Vec<Dense> = id
            .inputs
            .iter()
            .zip(t)
            .map(|(s, i)| Dense::basis(ctx, s, i))
            .collect();
        for (side, e) in [("lhs", &id.lhs), ("rhs", &id.rhs)] {
            let s = homtwist::apply_sweedler(ctx, e, &sparse_in)
                .map_err(|e| format!("{}: {e}", id.id))?;
            let d = eval(ctx, e, &dense_in);
            if Dense::from_multi(ctx, &s) != d {
                return Err(format!("{} {side} differs at {t:?}", id.id));
            }
        }
    }
    Ok(ts.len())
}

/// Whether both sides agree on every tuple under the dense evaluator alone.
pub fn holds(ctx: &Context, id: &Identity) -> bool {
    tuples(ctx, id).iter().all(|t| {
        let dense_in: Vec<Dense> = id
            .inputs
            .iter()
            .zip(t)
            .map(|(s, i)| Dense::basis(ctx, s, i))
            .collect();
        eval(ctx, &id.lhs, &dense_in) == eval(ctx, &id.rhs, &dense_in)
    })
}

use num_integer::Integer;

use super::lattice::{group_type, GroupType, TorsionClass};
use super::spec::{ArrangementSpec, ThetaVector};
use super::InvariantError;

fn check_len(spec: &ArrangementSpec, a: &ThetaVector) -> Result<(), InvariantError> {
    if a.len() != spec.k() {
        return Err(InvariantError::Malformed(format!("vector of length {} for {} components", a.len(), spec.k())));
    }
    Ok(())
}

/// `n_a = gcd(a_1 m_1, ..., a_k m_k, Σ a_j d_j)`.
pub fn compute_na(spec: &ArrangementSpec, a: &ThetaVector) -> Result<u64, InvariantError> {
    check_len(spec, a)?;
    let mut g = 0i64;
    let mut deg = 0i64;
    for (c, &x) in spec.components.iter().zip(a.entries()) {
        g = g.gcd(&(x * c.m as i64));
        deg += x * c.degree as i64;
    }
    Ok(g.gcd(&deg) as u64)
}

/// `b' = a mod n_a`, `κ = gcd(b')`, `b = b'/κ`.
pub fn reduce_theta(spec: &ArrangementSpec, a: &ThetaVector) -> Result<(ThetaVector, u64), InvariantError> {
    let n = compute_na(spec, a)? as i64;
    let b: Vec<i64> = a.entries().iter().map(|x| x.rem_euclid(n)).collect();
    let kappa = b.iter().fold(0i64, |g, x| g.gcd(x));
    if kappa == 0 {
        return Err(InvariantError::ZeroVector);
    }
    Ok((ThetaVector::new(b.iter().map(|x| x / kappa).collect())?, kappa as u64))
}

/// `τ(a) = Σ (a_j m_j / n_a) t_j` in the abstract lattice.
pub fn tau_class_o(spec: &ArrangementSpec, a: &ThetaVector) -> Result<TorsionClass, InvariantError> {
    let na = compute_na(spec, a)? as i64;
    let classes = spec.classes().ok_or(InvariantError::NoAbstractBackend)?;
    let mut acc = TorsionClass::zero(spec.lattice_modulus());
    for ((c, t), &x) in spec.components.iter().zip(&classes).zip(a.entries()) {
        acc = acc.add(&t.scale(x * c.m as i64 / na))?;
    }
    Ok(acc)
}

/// Order of `τ(a)`; with both backends present they must agree.
pub fn tau_order_o(spec: &ArrangementSpec, a: &ThetaVector) -> Result<u64, InvariantError> {
    let abstract_order = match spec.classes() {
        Some(_) => Some(tau_class_o(spec, a)?.order()),
        None => None,
    };
    let geometric_order = match &spec.geometric {
        Some(g) => Some(g.tau_order(spec, a)?),
        None => None,
    };
    match (abstract_order, geometric_order) {
        (Some(x), Some(y)) if x != y => Err(InvariantError::BackendDisagreement { theta: a.entries().to_vec(), lattice: x, curve: y }),
        (Some(x), _) | (None, Some(x)) => Ok(x),
        (None, None) => Err(InvariantError::NoAbstractBackend),
    }
}

/// Predicted number of irreducible components of the pullback: `n_a / ord τ(a)`.
pub fn splitting_number(spec: &ArrangementSpec, a: &ThetaVector) -> Result<u64, InvariantError> {
    let na = compute_na(spec, a)?;
    let o = tau_order_o(spec, a)?;
    debug_assert_eq!(na % o, 0);
    Ok(na / o)
}

/// `n = gcd` of all local intersection numbers and all degrees.
pub fn n_arrangement(spec: &ArrangementSpec) -> u64 {
    spec.components.iter().fold(0u64, |g, c| g.gcd(&c.m).gcd(&c.degree))
}

/// The points `P^L_j = (m_j / n) t_j`, which generate the group of the
/// line-section map.
pub fn p_l(spec: &ArrangementSpec) -> Result<Vec<TorsionClass>, InvariantError> {
    let n = n_arrangement(spec);
    let classes = spec.classes().ok_or(InvariantError::NoAbstractBackend)?;
    Ok(spec.components.iter().zip(classes).map(|(c, t)| t.scale((c.m / n) as i64)).collect())
}

/// `τ^L(a) = Σ a_j P^L_j`, defined on all of `Z^k`.
pub fn tau_l(spec: &ArrangementSpec, a: &[i64]) -> Result<TorsionClass, InvariantError> {
    let pts = p_l(spec)?;
    let mut acc = TorsionClass::zero(spec.lattice_modulus());
    for (p, &x) in pts.iter().zip(a) {
        acc = acc.add(&p.scale(x))?;
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct LineGroup {
    pub n: u64,
    pub points: Vec<TorsionClass>,
    pub orders: Vec<u64>,
    pub group: GroupType,
}

pub fn tau_l_group(spec: &ArrangementSpec) -> Result<LineGroup, InvariantError> {
    let points = p_l(spec)?;
    let orders = points.iter().map(TorsionClass::order).collect();
    let group = group_type(spec.lattice_modulus(), &points)?;
    Ok(LineGroup { n: n_arrangement(spec), points, orders, group })
}

pub fn in_kernel_tau_l(spec: &ArrangementSpec, a: &[i64]) -> Result<bool, InvariantError> {
    Ok(tau_l(spec, a)?.is_zero())
}

/// `lcm(m_1, ..., m_k)`: vectors with entries in `[0, lcm)` suffice when
/// searching for distinguishing `a`.
pub fn search_bound(spec: &ArrangementSpec) -> u64 {
    spec.components.iter().fold(1u64, |l, c| l.lcm(&c.m))
}

/// Vectors of `Θ_k` with entries in `[0, bound)`, by total then lexicographically.
pub fn theta_box(k: usize, bound: u64) -> Vec<ThetaVector> {
    let mut all: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        all = all
            .into_iter()
            .flat_map(|v| {
                (0..bound as i64).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    let mut out: Vec<ThetaVector> = all.into_iter().filter_map(|v| ThetaVector::new(v).ok()).collect();
    out.sort_by(|a, b| {
        let s = |v: &ThetaVector| v.entries().iter().sum::<i64>();
        s(a).cmp(&s(b)).then_with(|| a.cmp(b))
    });
    out
}

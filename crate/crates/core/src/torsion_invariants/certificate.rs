use std::fmt::Write;

use serde_json::{json, Value};

use super::spec::{ArrangementSpec, ThetaVector};
use super::tau::{in_kernel_tau_l, n_arrangement, search_bound, tau_l_group, tau_order_o, theta_box};
use super::InvariantError;

pub type Perm = Vec<usize>;

pub fn compose(outer: &[usize], inner: &[usize]) -> Perm {
    inner.iter().map(|&i| outer[i]).collect()
}

pub fn inverse(p: &[usize]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub fn identity(k: usize) -> Perm {
    (0..k).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Non-isomorphic groups generated by the line-section points.
    Group,
    /// Kernels of the line-section maps differ under every relabeling.
    Kernel,
    /// Order multisets over the relabelings differ.
    Multiset,
    /// For every relabeling some vector has different orders.
    Order,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Group => "group-witness",
            Mode::Kernel => "kernel-witness",
            Mode::Multiset => "multiset-witness",
            Mode::Order => "order-witness",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Group { left: String, right: String },
    /// `a` lies in exactly one of `ker τ^L_1` and `ker τ^L_2 ∘ ρ`.
    Kernel { rho: Perm, a: Vec<i64>, left: bool, right: bool },
    Multiset { a0: Vec<i64>, left: Vec<u64>, right: Vec<u64> },
    Order { rho: Perm, a: Vec<i64>, left: u64, right: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinguished,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ZariskiCertificate {
    pub left: String,
    pub right: String,
    pub mode: Option<Mode>,
    pub admissible: Vec<Perm>,
    pub witnesses: Vec<Witness>,
    pub verdict: Verdict,
}

impl ZariskiCertificate {
    pub fn is_distinguished(&self) -> bool {
        self.verdict == Verdict::Distinguished
    }

    pub fn to_json(&self) -> Value {
        let w: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| match w {
                Witness::Group { left, right } => json!({"group": [left, right]}),
                Witness::Kernel { rho, a, left, right } => json!({"rho": rho, "a": a, "in_kernel": [left, right]}),
                Witness::Multiset { a0, left, right } => json!({"a0": a0, "orders": [left, right]}),
                Witness::Order { rho, a, left, right } => json!({"rho": rho, "a": a, "orders": [left, right]}),
            })
            .collect();
        json!({
            "pair": [self.left, self.right],
            "verdict": match self.verdict { Verdict::Distinguished => "distinguished", Verdict::Inconclusive => "inconclusive" },
            "mode": self.mode.map(|m| m.name()),
            "admissible": self.admissible,
            "witnesses": w,
        })
    }

    pub fn report(&self) -> String {
        let mut s = String::new();
        match (&self.verdict, self.mode) {
            (Verdict::Distinguished, Some(m)) => {
                let _ = writeln!(s, "{} vs {}: distinguished ({})", self.left, self.right, m.name());
            }
            _ => {
                let _ = writeln!(s, "{} vs {}: inconclusive", self.left, self.right);
            }
        }
        for w in &self.witnesses {
            let line = match w {
                Witness::Group { left, right } => format!("  line-section groups {left} vs {right}"),
                Witness::Kernel { rho, a, left, right } => {
                    format!("  rho={rho:?}: a={a:?} in kernel {left} vs {right}")
                }
                Witness::Multiset { a0, left, right } => format!("  a0={a0:?}: orders {left:?} vs {right:?}"),
                Witness::Order { rho, a, left, right } => format!("  rho={rho:?}: a={a:?} orders {left} vs {right}"),
            };
            let _ = writeln!(s, "{line}");
        }
        let _ = writeln!(s, "--- certificate");
        let _ = writeln!(s, "{}", self.to_json());
        s
    }
}

fn matched(s1: &ArrangementSpec, s2: &ArrangementSpec, rho: &[usize]) -> bool {
    s1.d0 == s2.d0
        && rho.len() == s1.k()
        && s1.components.iter().enumerate().all(|(j, c)| {
            let d = &s2.components[rho[j]];
            c.degree == d.degree && c.m == d.m
        })
}

/// The self-relabelings of the left arrangement implied by a coset
/// `admissible = ρ0 · G`.
fn self_group(admissible: &[Perm]) -> Vec<Perm> {
    let r0 = inverse(&admissible[0]);
    let mut g: Vec<Perm> = admissible.iter().map(|r| compose(&r0, r)).collect();
    g.sort();
    g.dedup();
    g
}

fn line_group_witness(s1: &ArrangementSpec, s2: &ArrangementSpec) -> Result<Option<Witness>, InvariantError> {
    if s1.classes().is_none() || s2.classes().is_none() {
        return Ok(None);
    }
    let (g1, g2) = (tau_l_group(s1)?, tau_l_group(s2)?);
    if g1.group != g2.group {
        return Ok(Some(Witness::Group { left: g1.group.to_string(), right: g2.group.to_string() }));
    }
    Ok(None)
}

fn kernel_witnesses(s1: &ArrangementSpec, s2: &ArrangementSpec, admissible: &[Perm]) -> Result<Option<Vec<Witness>>, InvariantError> {
    if s1.classes().is_none() || s2.classes().is_none() {
        return Ok(None);
    }
    let n = n_arrangement(s1).max(n_arrangement(s2));
    if n == 1 {
        return Ok(None);
    }
    let k = s1.k();
    // τ^L factors through (Z/n)^k
    let mut vectors: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..k {
        vectors = vectors.into_iter().flat_map(|v| (0..n as i64).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    let mut out = Vec::new();
    for rho in admissible {
        let mut found = None;
        for a in &vectors {
            let ra = ThetaVector::permute_raw(a, rho);
            let (l, r) = (in_kernel_tau_l(s1, a)?, in_kernel_tau_l(s2, &ra)?);
            if l != r {
                found = Some(Witness::Kernel { rho: rho.clone(), a: a.clone(), left: l, right: r });
                break;
            }
        }
        match found {
            Some(w) => out.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

fn order_multiset(spec: &ArrangementSpec, a: &ThetaVector, perms: &[Perm]) -> Result<Vec<u64>, InvariantError> {
    let mut v = perms.iter().map(|p| tau_order_o(spec, &a.permute(p))).collect::<Result<Vec<_>, _>>()?;
    v.sort();
    Ok(v)
}

fn multiset_witness(s1: &ArrangementSpec, s2: &ArrangementSpec, admissible: &[Perm], box_: &[ThetaVector]) -> Result<Option<Witness>, InvariantError> {
    let group = self_group(admissible);
    for a in box_ {
        let left = order_multiset(s1, a, &group)?;
        let right = order_multiset(s2, a, admissible)?;
        if left != right {
            return Ok(Some(Witness::Multiset { a0: a.entries().to_vec(), left, right }));
        }
    }
    Ok(None)
}

fn order_witnesses(s1: &ArrangementSpec, s2: &ArrangementSpec, admissible: &[Perm], box_: &[ThetaVector]) -> Result<Option<Vec<Witness>>, InvariantError> {
    let mut out = Vec::new();
    for rho in admissible {
        let mut found = None;
        for a in box_ {
            let (l, r) = (tau_order_o(s1, a)?, tau_order_o(s2, &a.permute(rho))?);
            if l != r {
                found = Some(Witness::Order { rho: rho.clone(), a: a.entries().to_vec(), left: l, right: r });
                break;
            }
        }
        match found {
            Some(w) => out.push(w),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Try, in order, the group, kernel, multiset and order criteria. Every
/// permutation in `admissible` maps components of `s1` to those of `s2`; it
/// must contain all admissible relabelings (a superset is sound).
pub fn distinguish(s1: &ArrangementSpec, s2: &ArrangementSpec, admissible: &[Perm]) -> Result<ZariskiCertificate, InvariantError> {
    if admissible.is_empty() {
        return Err(InvariantError::EmptyAdmissibleSet);
    }
    if let Some(p) = admissible.iter().find(|p| !matched(s1, s2, p)) {
        return Err(InvariantError::Malformed(format!("permutation {p:?} does not match degrees and m")));
    }
    let mut cert = ZariskiCertificate {
        left: s1.name.clone(),
        right: s2.name.clone(),
        mode: None,
        admissible: admissible.to_vec(),
        witnesses: Vec::new(),
        verdict: Verdict::Inconclusive,
    };
    let done = |mode: Mode, w: Vec<Witness>, cert: &mut ZariskiCertificate| {
        cert.mode = Some(mode);
        cert.witnesses = w;
        cert.verdict = Verdict::Distinguished;
    };
    if let Some(w) = line_group_witness(s1, s2)? {
        done(Mode::Group, vec![w], &mut cert);
        return Ok(cert);
    }
    if let Some(w) = kernel_witnesses(s1, s2, admissible)? {
        done(Mode::Kernel, w, &mut cert);
        return Ok(cert);
    }
    let bound = search_bound(s1).max(search_bound(s2)).max(2);
    let box_ = theta_box(s1.k(), bound);
    if let Some(w) = multiset_witness(s1, s2, admissible, &box_)? {
        done(Mode::Multiset, vec![w], &mut cert);
        return Ok(cert);
    }
    if let Some(w) = order_witnesses(s1, s2, admissible, &box_)? {
        done(Mode::Order, w, &mut cert);
        return Ok(cert);
    }
    Ok(cert)
}

/// Recompute every witness from scratch and check it certifies what it claims.
pub fn verify_certificate(s1: &ArrangementSpec, s2: &ArrangementSpec, cert: &ZariskiCertificate) -> Result<bool, InvariantError> {
    if !cert.is_distinguished() {
        return Ok(true);
    }
    for w in &cert.witnesses {
        let ok = match w {
            Witness::Group { .. } => tau_l_group(s1)?.group != tau_l_group(s2)?.group,
            Witness::Kernel { rho, a, .. } => {
                in_kernel_tau_l(s1, a)? != in_kernel_tau_l(s2, &ThetaVector::permute_raw(a, rho))?
            }
            Witness::Multiset { a0, left, right } => {
                let a = ThetaVector::new(a0.clone())?;
                let group = self_group(&cert.admissible);
                let l = order_multiset(s1, &a, &group)?;
                let r = order_multiset(s2, &a, &cert.admissible)?;
                l == *left && r == *right && l != r
            }
            Witness::Order { rho, a, .. } => {
                let a = ThetaVector::new(a.clone())?;
                tau_order_o(s1, &a)? != tau_order_o(s2, &a.permute(rho))?
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    if matches!(cert.mode, Some(Mode::Kernel) | Some(Mode::Order)) {
        // one witness per admissible permutation
        let covered: Vec<&Perm> = cert
            .witnesses
            .iter()
            .filter_map(|w| match w {
                Witness::Kernel { rho, .. } | Witness::Order { rho, .. } => Some(rho),
                _ => None,
            })
            .collect();
        if !cert.admissible.iter().all(|p| covered.contains(&p)) {
            return Ok(false);
        }
    }
    Ok(true)
}

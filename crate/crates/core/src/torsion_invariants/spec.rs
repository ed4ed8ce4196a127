use num_integer::Integer;
use serde_json::{json, Value};

use super::geometric::GeometricArrangement;
use super::lattice::TorsionClass;
use super::InvariantError;

/// One component `C_j` of an arrangement: degree, gcd of its local
/// intersection numbers with the cubic, and its torsion class.
#[derive(Clone, Debug)]
pub struct ComponentData {
    pub degree: u64,
    pub m: u64,
    /// `None` when only a geometric backend is available.
    pub class: Option<TorsionClass>,
    /// `(point id, local intersection number with the distinguished curve)`.
    pub divisor: Vec<(String, u64)>,
}

impl ComponentData {
    pub fn new(degree: u64, m: u64, class: TorsionClass) -> ComponentData {
        ComponentData { degree, m, class: Some(class), divisor: Vec::new() }
    }

    pub fn with_divisor(mut self, divisor: Vec<(String, u64)>) -> ComponentData {
        self.divisor = divisor;
        self
    }
}

/// A maximal-flex arrangement `(D; C_1, ..., C_k)`.
#[derive(Clone, Debug)]
pub struct ArrangementSpec {
    pub name: String,
    pub d0: u64,
    pub components: Vec<ComponentData>,
    /// Optional explicit admissible permutations shipped with a spec file.
    pub admissible: Option<Vec<Vec<usize>>>,
    pub geometric: Option<GeometricArrangement>,
}

/// A vector of `Θ_k`: integer entries with gcd 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaVector(Vec<i64>);

impl ThetaVector {
    pub fn new(a: Vec<i64>) -> Result<ThetaVector, InvariantError> {
        if a.iter().fold(0i64, |g, x| g.gcd(x)) != 1 {
            return Err(InvariantError::InvalidTheta(a));
        }
        Ok(ThetaVector(a))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(ρa)_{ρ(j)} = a_j`: the vector seen through a relabeling of components.
    pub fn permute(&self, rho: &[usize]) -> ThetaVector {
        ThetaVector(Self::permute_raw(&self.0, rho))
    }

    pub fn permute_raw(a: &[i64], rho: &[usize]) -> Vec<i64> {
        let mut out = vec![0; a.len()];
        for (j, &r) in rho.iter().enumerate() {
            out[r] = a[j];
        }
        out
    }
}

impl ArrangementSpec {
    pub fn new(name: &str, d0: u64, components: Vec<ComponentData>) -> Result<ArrangementSpec, InvariantError> {
        let s = ArrangementSpec { name: name.into(), d0, components, admissible: None, geometric: None };
        s.validate()?;
        Ok(s)
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn validate(&self) -> Result<(), InvariantError> {
        if self.components.is_empty() {
            return Err(InvariantError::Malformed("an arrangement needs at least one component".into()));
        }
        for (j, c) in self.components.iter().enumerate() {
            let bad = |why: String| Err(InvariantError::Malformed(format!("component {}: {why}", j + 1)));
            if c.degree == 0 || c.m == 0 {
                return bad("degree and m must be positive".into());
            }
            if !c.divisor.is_empty() {
                if let Some((_, k)) = c.divisor.iter().find(|(_, k)| k % c.m != 0) {
                    return bad(format!("m = {} does not divide multiplicity {k}", c.m));
                }
                let g = c.divisor.iter().fold(0, |g, (_, k)| g.gcd(k));
                if g != c.m {
                    return bad(format!("m = {} but the multiplicities have gcd {g}", c.m));
                }
                let total: u64 = c.divisor.iter().map(|(_, k)| k).sum();
                if total != self.d0 * c.degree {
                    return bad(format!("multiplicities sum to {total}, expected {}", self.d0 * c.degree));
                }
            }
            if let Some(t) = &c.class {
                if !t.scale(c.m as i64).is_zero() {
                    return bad(format!("class {t} is not killed by m = {}", c.m));
                }
            }
        }
        Ok(())
    }

    /// Lattice modulus: lcm of the class moduli.
    pub fn lattice_modulus(&self) -> u64 {
        self.components.iter().filter_map(|c| c.class.map(|t| t.modulus())).fold(1, |a, b| a.lcm(&b))
    }

    /// Classes embedded in the common lattice, when every component has one.
    pub fn classes(&self) -> Option<Vec<TorsionClass>> {
        let n = self.lattice_modulus();
        self.components.iter().map(|c| c.class.map(|t| t.embed(n).expect("lcm is a multiple"))).collect()
    }

    pub fn from_json(v: &Value) -> Result<ArrangementSpec, InvariantError> {
        let bad = |w: &str| InvariantError::Malformed(w.into());
        let d0 = v["d0"].as_u64().ok_or_else(|| bad("d0 must be a positive integer"))?;
        let comps = v["components"].as_array().ok_or_else(|| bad("components must be a list"))?;
        let mut components = Vec::new();
        for c in comps {
            let degree = c["degree"].as_u64().ok_or_else(|| bad("component degree"))?;
            let m = c["m"].as_u64().ok_or_else(|| bad("component m"))?;
            let class = match (c.get("class"), c.get("modulus")) {
                (Some(Value::Array(ab)), Some(n)) if ab.len() == 2 => {
                    let n = n.as_u64().filter(|&n| n > 0).ok_or_else(|| bad("modulus"))?;
                    let a = ab[0].as_i64().ok_or_else(|| bad("class entries"))?;
                    let b = ab[1].as_i64().ok_or_else(|| bad("class entries"))?;
                    Some(TorsionClass::new(n, a, b))
                }
                (None, _) => None,
                _ => return Err(bad("class must be [a, b] with a modulus")),
            };
            let mut divisor = Vec::new();
            if let Some(d) = c.get("divisor") {
                for e in d.as_array().ok_or_else(|| bad("divisor must be a list"))? {
                    let id = match &e[0] {
                        Value::String(s) => s.clone(),
                        Value::Number(n) => n.to_string(),
                        _ => return Err(bad("divisor point id")),
                    };
                    let k = e[1].as_u64().ok_or_else(|| bad("divisor multiplicity"))?;
                    divisor.push((id, k));
                }
            }
            components.push(ComponentData { degree, m, class, divisor });
        }
        let admissible = match v.get("admissible") {
            None | Some(Value::Null) => None,
            Some(a) => {
                let mut out = Vec::new();
                for p in a.as_array().ok_or_else(|| bad("admissible must be a list"))? {
                    let p: Option<Vec<usize>> = p.as_array().map(|x| x.iter().filter_map(|e| e.as_u64().map(|u| u as usize)).collect());
                    out.push(p.ok_or_else(|| bad("permutation"))?);
                }
                Some(out)
            }
        };
        let name = v["name"].as_str().unwrap_or("spec").to_string();
        let s = ArrangementSpec { name, d0, components, admissible, geometric: None };
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                let mut o = json!({
                    "degree": c.degree,
                    "m": c.m,
                    "divisor": c.divisor.iter().map(|(id, k)| json!([id, k])).collect::<Vec<_>>(),
                });
                if let Some(t) = &c.class {
                    let (a, b) = t.coords();
                    o["class"] = json!([a, b]);
                    o["modulus"] = json!(t.modulus());
                }
                o
            })
            .collect();
        let mut v = json!({ "name": self.name, "d0": self.d0, "components": comps });
        if let Some(a) = &self.admissible {
            v["admissible"] = json!(a);
        }
        v
    }
}

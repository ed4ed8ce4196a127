//! Named constructions written out as arrangement files, and the reverse.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::catalog;
use super::recipes;
use super::{CliError, Options};
use crate::curve_geometry::PlaneCurve;
use crate::exact_fields::serial::{tower_from_json, tower_to_json};
use crate::torsion_invariants::{
    compute_na, reduce_theta, splitting_number, tau_class_o, tau_order_o, ArrangementSpec, ComponentData, InvariantError,
    ThetaVector, TorsionClass,
};

pub const RECIPES: [&str; 11] = [
    "two-triangles-c1", "two-triangles-c2", "two-triangles-c3", "tangents-triangle-c4", "tangents-triangle-c5", "fermat-c4", "fermat-c5", "90c3-plus-4", "90c3-plus-12",
    "90c3-plus-8", "90c3-plus-24",
];

/// An arrangement on a cubic: the cubic and the given curves, each possibly
/// a product of stored factors.
#[derive(Clone, Debug)]
pub struct Arrangement {
    pub cubic: PlaneCurve,
    pub curves: Vec<PlaneCurve>,
}

fn curve_json(c: &PlaneCurve) -> Value {
    match c.components() {
        Some(parts) => json!({"factors": parts.iter().map(PlaneCurve::to_json).collect::<Vec<_>>()}),
        None => c.to_json(),
    }
}

impl Arrangement {
    pub fn to_json(&self) -> Value {
        let tw = self.curves.iter().map(PlaneCurve::tower).fold(self.cubic.tower().clone(), |a, b| {
            if b.depth() > a.depth() {
                b.clone()
            } else {
                a
            }
        });
        json!({
            "tower": tower_to_json(&tw),
            "cubic": self.cubic.lift_to(&tw).to_json(),
            "curves": self.curves.iter().map(|c| curve_json(&c.lift_to(&tw))).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Arrangement, CliError> {
        let tw = tower_from_json(v.get("tower").unwrap_or(&json!([])))?;
        let cubic = PlaneCurve::from_json(&tw, &v["cubic"])?;
        let mut curves = Vec::new();
        for c in v["curves"].as_array().ok_or_else(|| CliError::Check("curves must be a list".into()))? {
            curves.push(match c.get("factors").and_then(Value::as_array) {
                Some(fs) => {
                    let parts = fs.iter().map(|f| PlaneCurve::from_json(&tw, f)).collect::<Result<Vec<_>, _>>()?;
                    PlaneCurve::product(&parts)
                }
                None => PlaneCurve::from_json(&tw, c)?,
            });
        }
        Ok(Arrangement { cubic, curves })
    }
}

/// The spec of a named construction, with its curves when it has them.
pub fn realize(recipe: &str, opts: &Options) -> Result<(ArrangementSpec, Option<Arrangement>), CliError> {
    let [c1, c2, c3] = recipes::two_triangles_specs();
    let [c4, c5] = recipes::tangents_triangle_specs();
    let abstract_only = |s: ArrangementSpec| Ok((s, None));
    match recipe {
        "two-triangles-c1" => abstract_only(c1),
        "two-triangles-c2" => abstract_only(c2),
        "two-triangles-c3" => abstract_only(c3),
        "tangents-triangle-c4" => abstract_only(c4),
        "tangents-triangle-c5" => abstract_only(c5),
        "fermat-c4" | "fermat-c5" => {
            let w = recipes::fermat_witness(&catalog::fermat(opts.tower_budget)?)?;
            let (spec, second) = if recipe == "fermat-c4" { (w.c4()?, &w.l_2t1) } else { (w.c5()?, &w.l_t2) };
            let arr = Arrangement {
                cubic: w.elliptic.cubic().clone(),
                curves: vec![w.l_t1.clone(), second.clone(), w.triangle.curve()],
            };
            Ok((spec, Some(arr)))
        }
        "90c3-plus-4" | "90c3-plus-12" | "90c3-plus-8" | "90c3-plus-24" => {
            let r: u64 = recipe.rsplit('-').next().and_then(|s| s.parse().ok()).expect("order suffix");
            let base = if r % 8 == 0 { r / 2 } else { r };
            if base != r && !opts.extended {
                return Err(CliError::Check(format!("order {r} needs a quartic extension; pass --extended")));
            }
            let (e, pts) = recipes::ec90c3_points(opts.tower_budget, &[base, 12])?;
            let labels = recipes::ec90c3_labels(&e, &pts[1])?;
            let inst = if base == r {
                recipes::clubsuit_instance(&e, &pts[0], 2)?
            } else {
                let (eh, h) = recipes::halve(&e, &pts[0])?;
                recipes::clubsuit_instance(&eh, &h, 2)?
            };
            let spec = inst.plus(if base == r { Some(&labels) } else { None })?;
            let conics = PlaneCurve::product(&[inst.c1.clone(), inst.c2.clone()]);
            let arr = Arrangement { cubic: inst.elliptic.cubic().clone(), curves: vec![inst.l0.clone(), conics] };
            Ok((spec, Some(arr)))
        }
        _ => Err(CliError::UnknownRecipe(recipe.into())),
    }
}

/// Random abstract specs checking `s · ord τ(a) = n_a` and the reduction
/// identity; returns the number of cases run.
pub fn property_sweep(seed: u64, cases: usize) -> Result<usize, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ms = [1u64, 2, 3, 4, 6, 12];
    let mut done = 0;
    while done < cases {
        let k = rng.gen_range(1..5);
        let comps = (0..k)
            .map(|_| {
                let m = ms[rng.gen_range(0..ms.len())];
                let s = (12 / m) as i64;
                ComponentData::new(rng.gen_range(1..5), m, TorsionClass::new(12, rng.gen_range(0..12) * s, rng.gen_range(0..12) * s))
            })
            .collect();
        let spec = ArrangementSpec::new("sweep", 3, comps)?;
        let Ok(a) = ThetaVector::new((0..k).map(|_| rng.gen_range(-20..20)).collect()) else { continue };
        let na = compute_na(&spec, &a)?;
        let o = tau_order_o(&spec, &a)?;
        if splitting_number(&spec, &a)? * o != na {
            return Err(CliError::Check(format!("splitting identity fails for {:?}", a.entries())));
        }
        match reduce_theta(&spec, &a) {
            Ok((b, kappa)) => {
                let nb = compute_na(&spec, &b)?;
                if tau_class_o(&spec, &a)? != tau_class_o(&spec, &b)?.scale((kappa * nb / na) as i64) {
                    return Err(CliError::Check(format!("reduction identity fails for {:?}", a.entries())));
                }
            }
            Err(InvariantError::ZeroVector) => {}
            Err(e) => return Err(e.into()),
        }
        done += 1;
    }
    Ok(done)
}

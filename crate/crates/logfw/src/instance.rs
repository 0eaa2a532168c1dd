//! Instance files: schema, parsing (JSON or TOML), and construction of the
//! typed pipeline for the declared base. Expected-results blocks are carried
//! along for comparison but never influence any computation.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::arith::gf::GF;
use crate::arith::qq::QQ;
use crate::arith::ratfunc::RatFunc;
use crate::arith::{FieldOps, FwBase, Prime};
use crate::error::{Error, Result};
use crate::mixed::ZpPrelog;
use crate::monoid::AffineMonoid;
use crate::poly::MPoly;
use crate::prelog::PrelogRing;
use crate::ring::{PolyRing, PresentedRing};
use crate::Budgets;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default)]
    pub name: Option<String>,
    pub base: BaseDesc,
    pub ring: RingDesc,
    pub monoid: MonoidDesc,
    #[serde(default)]
    pub alpha: BTreeMap<String, String>,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default)]
    pub expected: Option<serde_json::Value>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "base")]
pub enum BaseDesc {
    Fq { p: u64, m: usize },
    FpRational { p: u64, r: usize },
    ZpLocal { p: u64 },
}

impl BaseDesc {
    pub fn describe(&self) -> String {
        match self {
            BaseDesc::Fq { p, m } if *m == 1 => format!("F_{p}"),
            BaseDesc::Fq { p, m } => format!("F_{{{p}^{m}}}"),
            BaseDesc::FpRational { p, r } => format!("F_{p}(t1..t{r})"),
            BaseDesc::ZpLocal { p } => format!("Z_({p})"),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDesc {
    pub variables: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    /// integer coordinates of the distinguished point; the loader translates
    /// it to the origin
    #[serde(default)]
    pub point: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDesc {
    pub ambient_rank: usize,
    #[serde(default)]
    pub generators: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    /// asserts that the Jacobian regularity criterion is justified for this
    /// instance over an imperfect base
    #[serde(default)]
    pub jacobian_ok: bool,
    #[serde(default)]
    pub jacobian_ok_reason: Option<String>,
    /// declared Krull dimension of R for mixed-characteristic fixtures;
    /// cross-checked against the computed value
    #[serde(default)]
    pub dim_r: Option<usize>,
    #[serde(default)]
    pub dim_r_note: Option<String>,
}

/// A fully constructed instance, dispatched over the base.
pub enum Pipeline {
    Fq(PrelogRing<GF>),
    Rat(PrelogRing<RatFunc>),
    Zp(ZpPrelog),
}

pub struct LoadedInstance {
    pub name: String,
    pub base: String,
    pub pipeline: Pipeline,
    pub flags: Flags,
    pub expected: Option<serde_json::Value>,
    pub var_names: Vec<String>,
}

pub fn parse_instance_str(src: &str, is_toml: bool) -> Result<InstanceFile> {
    if is_toml {
        toml::from_str(src).map_err(|e| Error::Instance(format!("TOML parse error: {e}")))
    } else {
        serde_json::from_str(src).map_err(|e| Error::Instance(format!("JSON parse error: {e}")))
    }
}

/// Build the monoid and the generator permutation from file order to the
/// canonical (sorted, deduplicated) order.
fn build_monoid(desc: &MonoidDesc) -> Result<(AffineMonoid, Vec<usize>)> {
    for g in &desc.generators {
        if g.iter().all(|&x| x == 0) {
            return Err(Error::Instance(
                "zero vectors are not allowed as monoid generators".into(),
            ));
        }
    }
    let monoid = AffineMonoid::new(desc.ambient_rank, desc.generators.clone())?;
    let mut positions = Vec::with_capacity(desc.generators.len());
    for g in &desc.generators {
        let pos = monoid
            .gens()
            .iter()
            .position(|h| h == g)
            .expect("generator survived construction");
        positions.push(pos);
    }
    Ok((monoid, positions))
}

/// Resolve the alpha map (keys e1..em in file generator order) into images
/// indexed by the canonical generator order.
fn resolve_alpha<F: FieldOps>(
    file: &InstanceFile,
    monoid: &AffineMonoid,
    positions: &[usize],
    parse: &dyn Fn(&str) -> Result<MPoly<F>>,
    one: MPoly<F>,
) -> Result<Vec<MPoly<F>>> {
    let m_file = file.monoid.generators.len();
    let mut images: Vec<Option<MPoly<F>>> = vec![None; monoid.num_gens()];
    for (key, src) in &file.alpha {
        let idx: usize = key
            .strip_prefix('e')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Instance(format!("bad alpha key {key:?}, expected e<i>")))?;
        if idx == 0 || idx > m_file {
            return Err(Error::Instance(format!(
                "alpha key {key:?} is out of range (monoid has {m_file} generators)"
            )));
        }
        let img = parse(src)?;
        let slot = &mut images[positions[idx - 1]];
        match slot {
            Some(existing) if *existing != img => {
                return Err(Error::Instance(format!(
                    "duplicate monoid generator with conflicting alpha at key {key:?}"
                )));
            }
            _ => *slot = Some(img),
        }
    }
    if monoid.num_gens() == 0 {
        let _ = one;
        return Ok(Vec::new());
    }
    images
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                Error::Instance(format!(
                    "missing alpha image for monoid generator {:?}",
                    monoid.gens()[i]
                ))
            })
        })
        .collect()
}

/// Translate the distinguished point to the origin: substitute
/// x_i -> x_i + c_i in every polynomial.
fn translate<F: FieldOps>(ctx: &F, f: &MPoly<F>, point: &[F::El]) -> MPoly<F> {
    let mut out = f.clone();
    for (i, c) in point.iter().enumerate() {
        if ctx.is_zero(c) {
            continue;
        }
        let shifted = MPoly::var(ctx, f.nvars(), i).add(ctx, &MPoly::constant(ctx, f.nvars(), c.clone()));
        out = out.subst(ctx, i, &shifted);
    }
    out
}

fn load_field_instance<F: FwBase>(
    file: &InstanceFile,
    ctx: F,
    extra: &dyn Fn(&str) -> Option<MPoly<F>>,
    budgets: &Budgets,
) -> Result<PrelogRing<F>> {
    let ring = PolyRing::new(ctx.clone(), file.ring.variables.clone())?;
    let point: Vec<F::El> = file
        .ring
        .point
        .clone()
        .unwrap_or_default()
        .iter()
        .map(|&c| ctx.from_int(c))
        .collect();
    let mut parse_one = |src: &str| -> Result<MPoly<F>> {
        let f = ring.parse_with(src, extra)?;
        Ok(if point.is_empty() {
            f
        } else {
            translate(&ctx, &f, &point)
        })
    };
    let ideal = file
        .ring
        .ideal
        .iter()
        .map(|s| parse_one(s))
        .collect::<Result<Vec<_>>>()?;
    let presented = PresentedRing::new(ring, ideal)?;
    let (monoid, positions) = build_monoid(&file.monoid)?;
    let alpha = resolve_alpha(
        file,
        &monoid,
        &positions,
        &|s| {
            let f = presented.ring.parse_with(s, extra)?;
            Ok(if point.is_empty() {
                f
            } else {
                translate(&presented.ring.ctx, &f, &point)
            })
        },
        MPoly::one(presented.ctx(), presented.nvars()),
    )?;
    PrelogRing::new(presented, monoid, alpha, file.flags.jacobian_ok, budgets)
}

pub fn load_instance(file: InstanceFile, budgets: &Budgets) -> Result<LoadedInstance> {
    let name = file.name.clone().unwrap_or_else(|| "unnamed".to_string());
    let base = file.base.describe();
    let var_names = file.ring.variables.clone();
    let pipeline = match &file.base {
        BaseDesc::Fq { p, m } => {
            let ctx = GF::new(Prime::new(*p)?, *m)?;
            let z = ctx.gen();
            let nv = file.ring.variables.len();
            let zsym = ctx.clone();
            let extra = move |s: &str| -> Option<MPoly<GF>> {
                if s == "z" && zsym.degree() > 1 {
                    Some(MPoly::constant(&zsym, nv, z.clone()))
                } else {
                    None
                }
            };
            Pipeline::Fq(load_field_instance(&file, ctx, &extra, budgets)?)
        }
        BaseDesc::FpRational { p, r } => {
            let ctx = RatFunc::new(Prime::new(*p)?, *r)?;
            let nv = file.ring.variables.len();
            let tctx = ctx.clone();
            let extra = move |s: &str| -> Option<MPoly<RatFunc>> {
                let names = tctx.var_names();
                names
                    .iter()
                    .position(|n| n == s)
                    .map(|j| MPoly::constant(&tctx, nv, tctx.t(j)))
            };
            Pipeline::Rat(load_field_instance(&file, ctx, &extra, budgets)?)
        }
        BaseDesc::ZpLocal { p } => {
            let p = Prime::new(*p)?;
            let qq = QQ;
            let ring = PolyRing::new(qq.clone(), file.ring.variables.clone())?;
            let point: Vec<_> = file
                .ring
                .point
                .clone()
                .unwrap_or_default()
                .iter()
                .map(|&c| qq.from_int(c))
                .collect();
            let parse_one = |src: &str| -> Result<MPoly<QQ>> {
                let f = ring.parse_with(src, &|_| None)?;
                Ok(if point.is_empty() {
                    f
                } else {
                    translate(&qq, &f, &point)
                })
            };
            let ideal = file
                .ring
                .ideal
                .iter()
                .map(|s| parse_one(s))
                .collect::<Result<Vec<_>>>()?;
            let (monoid, positions) = build_monoid(&file.monoid)?;
            let alpha = resolve_alpha(
                &file,
                &monoid,
                &positions,
                &parse_one,
                MPoly::one(&qq, file.ring.variables.len()),
            )?;
            Pipeline::Zp(ZpPrelog::new(
                p,
                file.ring.variables.clone(),
                ideal,
                monoid,
                alpha,
                budgets,
            )?)
        }
    };
    Ok(LoadedInstance {
        name,
        base,
        pipeline,
        flags: file.flags,
        expected: file.expected,
        var_names,
    })
}

pub fn load_instance_path(path: &std::path::Path, budgets: &Budgets) -> Result<LoadedInstance> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Error::Instance(format!("cannot read {}: {e}", path.display())))?;
    let is_toml = path.extension().map(|e| e == "toml").unwrap_or(false);
    load_instance(parse_instance_str(&src, is_toml)?, budgets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let src = r#"{
            "name": "nn-standard",
            "base": {"base": "Fq", "p": 2, "m": 1},
            "ring": {"variables": ["x", "y"], "ideal": []},
            "monoid": {"ambient_rank": 2, "generators": [[1,0],[0,1]]},
            "alpha": {"e1": "x", "e2": "y"}
        }"#;
        let file = parse_instance_str(src, false).unwrap();
        let loaded = load_instance(file, &Budgets::default()).unwrap();
        assert_eq!(loaded.name, "nn-standard");
        match loaded.pipeline {
            Pipeline::Fq(p) => {
                p.validate(&Budgets::default()).unwrap();
            }
            _ => panic!("wrong base"),
        }
    }

    #[test]
    fn toml_with_point_translation() {
        // torus point (1,1): the ideal u*v - 1 has the point on it
        let src = r#"
            name = "torus-shifted"
            [base]
            base = "Fq"
            p = 3
            m = 1
            [ring]
            variables = ["u", "v"]
            ideal = ["u*v - 1"]
            point = [1, 1]
            [monoid]
            ambient_rank = 0
            generators = []
            [alpha]
        "#;
        let file = parse_instance_str(src, true).unwrap();
        let loaded = load_instance(file, &Budgets::default()).unwrap();
        match loaded.pipeline {
            Pipeline::Fq(p) => {
                // translated generator: (u+1)(v+1) - 1 = uv + u + v
                assert_eq!(p.ring.ideal.gens().len(), 1);
                let shown = p.ring.ring.show(&p.ring.ideal.gens()[0]);
                assert!(shown.contains("u*v"), "{shown}");
                let v = p.log_regular_by_definition(&Budgets::default()).unwrap();
                assert!(v.is_log_regular); // smooth, trivial log
            }
            _ => panic!("wrong base"),
        }
    }

    #[test]
    fn alpha_keys_follow_file_order() {
        // generators listed in non-sorted order; e1 refers to the first one
        let src = r#"{
            "base": {"base": "Fq", "p": 2, "m": 1},
            "ring": {"variables": ["x", "y"]},
            "monoid": {"ambient_rank": 2, "generators": [[0,1],[1,0]]},
            "alpha": {"e1": "y", "e2": "x"}
        }"#;
        let file = parse_instance_str(src, false).unwrap();
        let loaded = load_instance(file, &Budgets::default()).unwrap();
        match loaded.pipeline {
            Pipeline::Fq(p) => {
                // canonical generator order sorts (0,1) before (1,0); e1=(0,1)->y
                assert_eq!(p.ring.ring.show(&p.alpha[0]), "y");
                assert_eq!(p.ring.ring.show(&p.alpha[1]), "x");
                p.validate(&Budgets::default()).unwrap();
            }
            _ => panic!("wrong base"),
        }
    }

    #[test]
    fn missing_alpha_is_rejected() {
        let src = r#"{
            "base": {"base": "Fq", "p": 2, "m": 1},
            "ring": {"variables": ["x"]},
            "monoid": {"ambient_rank": 1, "generators": [[1]]},
            "alpha": {}
        }"#;
        let file = parse_instance_str(src, false).unwrap();
        assert!(matches!(
            load_instance(file, &Budgets::default()),
            Err(Error::Instance(_))
        ));
    }
}

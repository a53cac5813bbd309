use serde_json::json;

use lagrange_core::bianchi::{c_i_estimate, spectrum_sample, BianchiContext, GeneratorSet};
use lagrange_core::contfrac::{approx_constant, CFWord, WordKind};
use lagrange_core::heis::{c_prime_estimate, heis_penetration, HeisInput};
use lagrange_core::hypgeo::{d_of_r, excursion_limsup, form_height, horoball_penetration, CuspGroup, Modular, QuadMatrix};
use lagrange_core::numkit::{ComplexInput, IdealSpec, OrderSpec, QuadInt};
use lagrange_core::spectra::{duality, duality_inverse, spectrum_report, Setting, SpectrumSample};
use lagrange_core::{Error, Result};

use crate::cli::{ApproxArgs, ClosureArgs, Common, DualityArgs, HeightArgs, PenetrationArgs, SettingArg, SpectrumArgs};
use crate::output::{num, opt_num, Output};

const ESTIMATE_HEADER: [&str; 5] = ["record", "cutoff", "value", "witness", "certified"];
const REAL_CUTOFF: f64 = 200.0;
const BIANCHI_CUTOFF: f64 = 10.0;

fn required<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value.as_deref().ok_or_else(|| Error::Invalid(format!("--{flag} is required here")))
}

fn context(c: &Common) -> Result<BianchiContext> {
    let order = OrderSpec::maximal(c.m)?;
    Ok(BianchiContext::new(IdealSpec::parse(&c.ideal, order)?))
}

fn setting_tag(c: &Common, ctx: Option<&BianchiContext>) -> Setting {
    let ideal = ctx.map(|x| x.ideal().to_string()).unwrap_or_default();
    match c.setting {
        SettingArg::Rational => Setting::Rational,
        SettingArg::Bianchi => Setting::Bianchi { m: c.m, ideal },
        SettingArg::Heisenberg => Setting::Heisenberg { m: c.m, ideal },
    }
}

fn cutoff(given: Option<f64>, default: f64) -> Result<f64> {
    let c = given.unwrap_or(default);
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Invalid(format!("cutoff {c} must be positive and finite")));
    }
    Ok(c)
}

fn periodic_word(s: &str) -> Result<CFWord> {
    let w: CFWord = s.parse()?;
    match w.kind() {
        WordKind::Periodic => Ok(w),
        WordKind::Finite => Err(Error::RationalInput),
        WordKind::SampledPrefix => Err(Error::NotClosedGeodesic("word is not eventually periodic".into())),
    }
}

pub fn approx_const(a: &ApproxArgs) -> Result<Output> {
    let c = &a.common;
    match c.setting {
        SettingArg::Rational => {
            let w: CFWord = required(&a.cf, "cf")?.parse()?;
            let r = approx_constant(&w)?;
            let certified = !r.estimate;
            let mut out = Output::new(
                ESTIMATE_HEADER.to_vec(),
                json!({
                    "setting": Setting::Rational,
                    "input": w.to_string(),
                    "estimate": r.value,
                    "certified": certified,
                    "position": r.position,
                    "window": r.window,
                    "trace": r.trace,
                }),
            );
            let witness = if r.estimate { format!("n={}", r.position) } else { format!("rotation={}", r.position) };
            let cutoff = if r.estimate { r.window.1.to_string() } else { String::new() };
            out.row(vec!["estimate".into(), cutoff, num(r.value), witness, certified.to_string()]);
            if let Some(t) = &r.trace {
                out.trace_rows(t);
            }
            Ok(out)
        }
        SettingArg::Bianchi => {
            let ctx = context(c)?;
            let x = ComplexInput::parse(required(&a.x, "x")?)?;
            let e = c_i_estimate(&ctx, &x, a.norm_bound)?;
            let mut out = Output::new(
                ESTIMATE_HEADER.to_vec(),
                json!({
                    "setting": setting_tag(c, Some(&ctx)),
                    "estimate": e.estimate,
                    "certified": false,
                    "witness": e.witness.to_string(),
                    "window": e.window,
                    "suspect_parabolic": e.suspect_parabolic,
                    "trace": e.trace,
                }),
            );
            out.row(vec!["estimate".into(), a.norm_bound.to_string(), num(e.estimate), e.witness.to_string(), "false".into()]);
            out.trace_rows(&e.trace);
            Ok(out)
        }
        SettingArg::Heisenberg => {
            let ctx = context(c)?;
            let x: HeisInput = required(&a.point, "point")?.parse()?;
            let e = c_prime_estimate(&ctx, &x, a.norm_bound)?;
            let mut out = Output::new(
                ESTIMATE_HEADER.to_vec(),
                json!({
                    "setting": setting_tag(c, Some(&ctx)),
                    "estimate": e.estimate,
                    "certified": false,
                    "witness": e.witness.to_string(),
                    "window": e.window,
                    "suspect_parabolic": e.suspect_parabolic,
                    "trace": e.trace,
                }),
            );
            out.row(vec!["estimate".into(), a.norm_bound.to_string(), num(e.estimate), e.witness.to_string(), "false".into()]);
            out.trace_rows(&e.trace);
            Ok(out)
        }
    }
}

fn sample(c: &Common, word_length: usize, cut: Option<f64>) -> Result<SpectrumSample> {
    if word_length == 0 {
        return Err(Error::Invalid("word length must be positive".into()));
    }
    match c.setting {
        SettingArg::Rational => {
            let h = spectrum_sample(&GeneratorSet::modular_positive(), &Modular, word_length, cutoff(cut, REAL_CUTOFF)?)?;
            Ok(SpectrumSample::from_heights(Setting::Rational, h))
        }
        SettingArg::Bianchi => {
            let ctx = context(c)?;
            let h = spectrum_sample(&GeneratorSet::bianchi(&ctx), &ctx, word_length, cutoff(cut, BIANCHI_CUTOFF)?)?;
            Ok(SpectrumSample::from_heights(setting_tag(c, Some(&ctx)), h))
        }
        SettingArg::Heisenberg => Err(Error::Invalid("no closed-geodesic sampler for the heisenberg setting".into())),
    }
}

/// Rows in ascending height, i.e. descending value.
pub fn spectrum(a: &SpectrumArgs) -> Result<Output> {
    let s = sample(&a.common, a.word_length, a.cutoff)?;
    let rows: Vec<_> = s.rows().iter().rev().collect();
    let mut out = Output::new(
        vec!["value", "height", "witness", "certified"],
        json!({ "setting": s.setting, "rows": rows }),
    );
    for r in rows {
        out.row(vec![num(r.value), num(r.height), r.witness.clone(), r.certified.to_string()]);
    }
    Ok(out)
}

fn group_for(c: &Common) -> Result<(OrderSpec, Box<dyn CuspGroup>, f64)> {
    match c.setting {
        SettingArg::Rational => Ok((OrderSpec::gaussian(), Box::new(Modular), REAL_CUTOFF)),
        SettingArg::Bianchi => {
            let ctx = context(c)?;
            Ok((ctx.order(), Box::new(ctx), BIANCHI_CUTOFF))
        }
        SettingArg::Heisenberg => Err(Error::Invalid("heights are defined for the rational and bianchi settings".into())),
    }
}

pub fn height(a: &HeightArgs) -> Result<Output> {
    let c = &a.common;
    match (&a.matrix, &a.cf) {
        (Some(m), None) => {
            let (order, group, default_cut) = group_for(c)?;
            let m = QuadMatrix::parse(m, order)?;
            if c.setting == SettingArg::Rational && !m.is_integer() {
                return Err(Error::NotInGroup("rational setting needs an integer matrix".into()));
            }
            if !m.c.is_zero() && !group.is_row(&m.c, &m.d) {
                return Err(Error::NotInGroup(format!("{m} fails the congruence condition")));
            }
            let cut = cutoff(a.cutoff, default_cut)?;
            let h = form_height(&m, group.as_ref(), cut)?;
            let gmin = h.form_min.map(|g| g.to_string()).unwrap_or_default();
            let witness = format!("row=({},{}) min_form={gmin}", h.row.c, h.row.d);
            let mut out = Output::new(
                ESTIMATE_HEADER.to_vec(),
                json!({
                    "matrix": m.to_string(),
                    "height": h.value,
                    "value": duality_inverse(h.value),
                    "row": [h.row.c.to_string(), h.row.d.to_string()],
                    "min_form": gmin,
                    "cutoff": cut,
                    "certified": h.certified,
                }),
            );
            out.row(vec!["height".into(), num(cut), num(h.value), witness, h.certified.to_string()]);
            Ok(out)
        }
        (None, Some(w)) => {
            if c.setting != SettingArg::Rational {
                return Err(Error::Invalid("--cf heights are defined for the rational setting".into()));
            }
            let x = periodic_word(w)?.value()?;
            let e = excursion_limsup(&x, a.depth)?;
            let mut out = Output::new(
                ESTIMATE_HEADER.to_vec(),
                json!({
                    "input": w,
                    "estimate": e.estimate,
                    "window": e.window,
                    "certified": false,
                    "trace": e.trace,
                }),
            );
            let witness = e.trace.last().map(|s| s.witness.clone()).unwrap_or_default();
            out.row(vec!["estimate".into(), a.depth.to_string(), num(e.estimate), witness, "false".into()]);
            out.trace_rows(&e.trace);
            Ok(out)
        }
        _ => Err(Error::Invalid("give exactly one of --matrix and --cf".into())),
    }
}

pub fn penetration(a: &PenetrationArgs) -> Result<Output> {
    let c = &a.common;
    let order = match c.setting {
        SettingArg::Rational => OrderSpec::gaussian(),
        _ => OrderSpec::maximal(c.m)?,
    };
    let mut out = Output::new(vec!["quantity", "value"], json!(null));
    let mut fields = serde_json::Map::new();
    match (&a.matrix, &a.q) {
        (Some(m), None) => {
            if c.setting == SettingArg::Heisenberg {
                return Err(Error::Invalid("--matrix is for the rational and bianchi settings".into()));
            }
            let m = QuadMatrix::parse(m, order)?;
            let geometric = horoball_penetration(&m.to_mobius())?;
            let formula = d_of_r(&m.c)?;
            for (k, v) in [("geometric", geometric), ("formula", formula), ("gap", (geometric - formula).abs())] {
                out.row(vec![k.into(), num(v)]);
                fields.insert(k.into(), json!(v));
            }
        }
        (None, Some(q)) => {
            let q = QuadInt::parse(q, order)?;
            let v = match c.setting {
                SettingArg::Heisenberg => heis_penetration(&q)?,
                _ => d_of_r(&q)?,
            };
            out.row(vec!["formula".into(), num(v)]);
            fields.insert("formula".into(), json!(v));
        }
        _ => return Err(Error::Invalid("give exactly one of --matrix and --q".into())),
    }
    Ok(out.with_json(serde_json::Value::Object(fields)))
}

pub fn duality_check(a: &DualityArgs) -> Result<Output> {
    if a.common.setting != SettingArg::Rational {
        return Err(Error::Invalid("duality-check runs in the rational setting".into()));
    }
    let w = periodic_word(&a.cf)?;
    let c = approx_constant(&w)?.value;
    let dual = duality(c)?;
    let e = excursion_limsup(&w.value()?, a.depth)?;
    let gap = (e.estimate - dual).abs();
    let mut out = Output::new(
        vec!["quantity", "value"],
        json!({
            "input": w.to_string(),
            "approx_constant": c,
            "dual_height": dual,
            "excursion_limsup": e.estimate,
            "gap": gap,
            "depth": a.depth,
        }),
    );
    for (k, v) in [("approx_constant", c), ("dual_height", dual), ("excursion_limsup", e.estimate), ("gap", gap)] {
        out.row(vec![k.into(), num(v)]);
    }
    Ok(out)
}

pub fn closure_report(a: &ClosureArgs) -> Result<Output> {
    if !(a.eps > 0.0) {
        return Err(Error::Invalid(format!("eps {} must be positive", a.eps)));
    }
    let s = sample(&a.common, a.word_length, a.cutoff)?;
    let mut estimates = a.estimates.clone();
    for w in &a.cf {
        estimates.push(excursion_limsup(&periodic_word(w)?.value()?, a.depth)?.estimate);
    }
    let r = spectrum_report(&s, a.eps, &estimates);
    let json = serde_json::to_value(&r).map_err(|e| Error::Invalid(e.to_string()))?;
    let mut out = Output::new(vec!["record", "value", "height", "detail"], json);
    out.row(vec!["max_value".into(), opt_num(r.max_value), String::new(), opt_bool(r.within_bound)]);
    out.row(vec!["min_height".into(), String::new(), opt_num(r.min_height), String::new()]);
    for acc in &r.accumulation_candidates {
        out.row(vec!["accumulation".into(), num(acc.value), num(acc.height), format!("count={}", acc.count)]);
    }
    for g in &r.nearest_heights {
        out.row(vec!["nearest".into(), String::new(), num(g.nearest_height), format!("estimate={} gap={}", num(g.estimate), num(g.gap))]);
    }
    for v in &r.duality_violations {
        out.row(vec!["duality_violation".into(), num(v.value), num(v.height), v.witness.clone()]);
    }
    Ok(out)
}

fn opt_bool(b: Option<bool>) -> String {
    b.map(|b| format!("within_bound={b}")).unwrap_or_default()
}

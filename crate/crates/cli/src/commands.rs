//! One function per subcommand, each producing a [`ResultDocument`].

use std::sync::Arc;

use legendre_core::charsums::{gauss_sum, jacobi_quotient_verdict, jacobi_sum, MultCharacter, QuotientVerdict};
use legendre_core::curves::{count_points_brute, count_points_hgf, l_polynomial, CountResult, CurveFamily, CurveInstance};
use legendre_core::cyclotomic::CycNumber;
use legendre_core::hgf::{greene_2f1_def, greene_2f1_sum};
use legendre_core::parse::{parse_lambda, parse_primes, parse_rational, MAX_PRIME_RANGE};
use legendre_core::periods::{
    beta_quotient, endomorphism_relations_check, gamma_ratio_check, period_matrix, period_tau, qm_check, recognize_algebraic,
    MatrixShape, Precision, RecognitionBounds,
};
use legendre_core::{Error, FieldSpec};
use num_rational::Rational64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CharsumMode, CountArgs, FamilyArgs, LpolyArgs, Method, PeriodsArgs, QmArgs, VerifyArgs, Via};
use crate::document::{ItemOutcome, Status};
use crate::expectations::Expectations;
use crate::suites::{self, judge, SuiteOptions, SuiteSelection};
use crate::CliError;

const MAX_SAMPLES: usize = 10_000;

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

fn family(f: &FamilyArgs) -> Result<CurveFamily, CliError> {
    Ok(CurveFamily::new(f.n, f.i, f.j, f.k)?)
}

fn precision(digits: u32) -> Result<Precision, CliError> {
    Ok(Precision::new(digits)?)
}

fn pass(suite: &str, id: impl Into<String>, observed: Value) -> ItemOutcome {
    ItemOutcome::new(suite, id, Status::Pass, observed)
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn cyc(c: &CycNumber) -> Value {
    let z = c.embed();
    json!({"exact": c.to_json(), "complex": [z.re, z.im]})
}

pub fn count(a: &CountArgs) -> Result<Vec<ItemOutcome>, CliError> {
    let inst = CurveInstance::new(family(&a.family)?, parse_lambda(&a.lambda)?)?;
    let f = FieldSpec::build(a.p, a.s)?;
    let show = |c: &CountResult| json!({"count": c, "trace": c.trace()});
    let mut out = Vec::new();
    let brute = matches!(a.method, Method::Brute | Method::Both).then(|| count_points_brute(&inst, &f)).transpose()?;
    let hgf = matches!(a.method, Method::Hgf | Method::Both).then(|| count_points_hgf(&inst, &f)).transpose()?;
    if let Some(b) = &brute {
        out.push(pass("count", "brute", show(b)));
    }
    if let Some(h) = &hgf {
        out.push(pass("count", "hgf", show(h)));
    }
    if let (Some(b), Some(h)) = (brute, hgf) {
        let agree = b.total == h.total && b.resolved == h.resolved;
        out.push(ItemOutcome::new("count", "agreement", verdict(agree), json!({"agree": agree})));
    }
    Ok(out)
}

pub fn lpoly(a: &LpolyArgs) -> Result<Vec<ItemOutcome>, CliError> {
    let fam = family(&a.family)?;
    let tabulated = (fam.n(), fam.i(), fam.j(), fam.k()) == (5, 1, 4, 1);
    let lambda = match (&a.lambda, tabulated) {
        (Some(s), _) => parse_lambda(s)?,
        (None, true) => Rational64::from_integer(2),
        (None, false) => return Err(CliError::Usage("--lambda is required for this family".into())),
    };
    let l = l_polynomial(&CurveInstance::new(fam, lambda)?, a.p)?;
    let item = match l.check() {
        Ok(w) => pass("lpoly", format!("p={}", a.p), json!({"l_polynomial": l, "weil": w})),
        Err(e) => ItemOutcome::new("lpoly", format!("p={}", a.p), Status::Fail, json!({"l_polynomial": l}))
            .with_detail(e.to_string()),
    };
    Ok(vec![if tabulated && lambda != Rational64::from_integer(2) {
        item.with_detail("λ differs from the tabulated value 2")
    } else {
        item
    }])
}

fn prime_field(p: u64) -> Result<Arc<FieldSpec>, CliError> {
    Ok(Arc::new(FieldSpec::build(p, 1)?))
}

pub fn charsum(mode: &CharsumMode) -> Result<Vec<ItemOutcome>, CliError> {
    const SUITE: &str = "charsum";
    match *mode {
        CharsumMode::Gauss { p, m, a } => {
            let chi = MultCharacter::new(prime_field(p)?, m, a)?;
            Ok(vec![pass(SUITE, format!("g(η^{a})"), cyc(&gauss_sum(&chi)?))])
        }
        CharsumMode::Jacobi { p, m, a, b, c, d, argument } => {
            let f = prime_field(p)?;
            let ch = |t: i64| MultCharacter::new(f.clone(), m, t);
            let mut out = vec![pass(SUITE, format!("J(η^{a},η^{b})"), cyc(&jacobi_sum(&ch(a)?, &ch(b)?)?))];
            if let (Some(c), Some(d)) = (c, d) {
                out.push(pass(SUITE, format!("J(η^{c},η^{d})"), cyc(&jacobi_sum(&ch(c)?, &ch(d)?)?)));
                let v = jacobi_quotient_verdict(p, m, (a, b), (c, d))?;
                let mut observed = to_json(&v);
                if let (QuotientVerdict::CharacterLike { exponent }, Some(x)) = (&v, argument) {
                    let xe = f.from_int(x);
                    let mut powers = Vec::new();
                    for t in 0..m as i64 {
                        if ch(t)?.eval_exp(xe) == Some(*exponent) {
                            powers.push(t);
                        }
                    }
                    observed["character_powers"] = json!({"argument": x, "powers": powers});
                }
                out.push(pass(SUITE, "quotient", observed));
            }
            Ok(out)
        }
        CharsumMode::Hgf { p, m, big_a, big_b, big_c, ref lambda, via } => {
            let f = prime_field(p)?;
            let l = parse_rational(lambda)?;
            let x = f
                .from_rational(*l.numer(), *l.denom())
                .ok_or_else(|| Error::Precondition(format!("λ = {l} has no image mod {p}")))?;
            let ch = |t: i64| MultCharacter::new(f.clone(), m, t);
            let (ca, cb, cc) = (ch(big_a)?, ch(big_b)?, ch(big_c)?);
            let def = matches!(via, Via::Def | Via::Both).then(|| greene_2f1_def(&ca, &cb, &cc, x)).transpose()?;
            let sum = matches!(via, Via::Sum | Via::Both).then(|| greene_2f1_sum(&ca, &cb, &cc, x)).transpose()?;
            let show = |v: &legendre_core::cyclotomic::CycRational| {
                let z = v.embed();
                json!({"exact": v.to_json(), "complex": [z.re, z.im]})
            };
            let mut out = Vec::new();
            if let Some(v) = &def {
                out.push(pass(SUITE, "definition", show(v)));
            }
            if let Some(v) = &sum {
                out.push(pass(SUITE, "sum", show(v)));
            }
            if let (Some(d), Some(s)) = (def, sum) {
                out.push(ItemOutcome::new(SUITE, "agreement", verdict(d == s), json!({"agree": d == s})));
            }
            Ok(out)
        }
    }
}

pub fn periods(a: &PeriodsArgs) -> Result<Vec<ItemOutcome>, CliError> {
    const SUITE: &str = "periods";
    let fam = family(&a.family)?;
    let lambda = parse_rational(&a.lambda)?;
    let prec = precision(a.precision)?;
    let set = period_tau(&fam, lambda, prec)?;
    let mut out: Vec<ItemOutcome> = set
        .pairs
        .iter()
        .map(|pp| pass(SUITE, format!("tau n={}", pp.n), json!({"tau": pp.tau, "tau_prime": pp.tau_prime})))
        .collect();
    let g = gamma_ratio_check(&fam, lambda, prec)?;
    out.push(ItemOutcome::new(SUITE, "gamma-ratio", verdict(g.holds), to_json(&g)));

    if let Ok(shape) = MatrixShape::of(&fam) {
        let m = period_matrix(&fam, lambda, prec)?;
        out.push(pass(
            SUITE,
            "matrix",
            json!({"shape": shape, "dimension": m.dimension(), "real_rank": m.real_rank, "constants": m.constants, "rows": m.rows}),
        ));
        if let (Some(b1), Some(b2)) = (m.constant("beta1"), m.constant("beta2")) {
            let prod = b1.mul(b2);
            let id = format!("beta1*beta2 lambda={lambda}");
            let expected = Expectations::builtin().lookup(SUITE, &id).cloned();
            let mut observed = json!({"decimal": prod.to_decimal(30).0});
            let item = match &expected {
                Some(e) => {
                    let target = parse_rational(e["value"].as_str().unwrap_or("")).map(|r| {
                        legendre_core::periods::HPComplex::from_rational(r, prec)
                    })?;
                    observed["residual_log10"] = json!(suites::residual(prod.log10_distance(&target), prec));
                    let problems = judge(e, &observed);
                    ItemOutcome::new(SUITE, "beta1*beta2", verdict(problems.is_empty()), observed)
                }
                None => pass(SUITE, "beta1*beta2", observed),
            };
            out.push(ItemOutcome { expected, ..item });
        }
        let r = endomorphism_relations_check(&fam, lambda, prec)?;
        out.push(ItemOutcome::new(SUITE, "relations", verdict(r.holds), to_json(&r)));
    }

    if let Ok(q) = beta_quotient(fam.n(), fam.i(), fam.j(), fam.k(), prec) {
        let eval = |p| beta_quotient(fam.n(), fam.i(), fam.j(), fam.k(), p);
        let guess = recognize_algebraic(eval, prec, RecognitionBounds::default())?;
        out.push(pass(SUITE, "beta-quotient", json!({"value": q, "recognition": guess})));
    }
    Ok(out)
}

pub fn qm(a: &QmArgs) -> Result<Vec<ItemOutcome>, CliError> {
    let f = &a.family;
    let primes = a.primes.as_deref().map(parse_primes).transpose()?;
    let r = qm_check(f.n, f.i, f.j, f.k, primes.as_deref(), precision(a.precision)?)?;
    let summary = format!("verdict {}", to_json(r.verdict).as_str().unwrap_or("?"));
    Ok(vec![pass("qm-check", format!("[{};{},{},{}]", f.n, f.i, f.j, f.k), to_json(r)).with_detail(summary)])
}

pub fn verify(a: &VerifyArgs) -> Result<Vec<ItemOutcome>, CliError> {
    let selection: SuiteSelection = a.suite.parse().map_err(CliError::Usage)?;
    if a.samples == 0 || a.samples > MAX_SAMPLES {
        return Err(CliError::Usage(format!("--samples must lie in 1..={MAX_SAMPLES}")));
    }
    if a.pmax.is_some_and(|m| m > MAX_PRIME_RANGE) {
        return Err(CliError::Usage(format!("--pmax must not exceed {MAX_PRIME_RANGE}")));
    }
    let opts = SuiteOptions {
        primes: a.primes.as_deref().map(parse_primes).transpose()?,
        pmax: a.pmax,
        seed: a.seed,
        samples: a.samples,
        precision: precision(a.precision)?,
    };
    Ok(suites::run(selection, &opts, Expectations::builtin()))
}

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use eo_algebra::morava::{find_order_p_unit, verify_tk_lemma, EndoRing};
use eo_algebra::nilpotent::coproduct_chi_check;
use eo_algebra::orientation::{eo_bound, known_orders_report, theta_sphere_valuation};
use eo_algebra::splitting::{
    beta_constants, decompose_stunted, finite_part_support, ko_pattern, tate_transition_surjective,
    thom_shift_linearity, verify_free_generators,
};
use eo_algebra::stunted::{duality_check, PkParams, StuntedBasis};

use crate::error::CliError;
use crate::report::Verdict;

#[derive(Debug, Parser)]
#[command(name = "eo-tool", version, about = "Exact-algebra checks for P_k actions, orientation orders and order-p units")]
pub struct Cli {
    /// Emit a JSON report instead of aligned text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.parse().map_err(|e| format!("{e}"))?;
    if eo_algebra::fp::is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PkArgs {
    /// Prime
    #[arg(long, value_parser = parse_prime)]
    pub p: u64,
    /// Index of P_k (height is k(p-1))
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
}

impl PkArgs {
    fn params(&self) -> Result<PkParams, CliError> {
        Ok(PkParams::new(self.p, self.k)?)
    }
}

#[derive(Debug, Clone, Copy, Args)]
pub struct WindowArgs {
    #[command(flatten)]
    pub pk: PkArgs,
    /// Bottom cell (Thom class multiple)
    #[arg(long, visible_alias = "bot", default_value_t = 0, allow_hyphen_values = true)]
    pub c: i64,
    /// Top cell
    #[arg(long, allow_hyphen_values = true)]
    pub top: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Free and finite parts of H_*(CP^top_c) under P_k
    Decompose(WindowArgs),
    /// Check the predicted free generators b_{pi}
    FreeGens(WindowArgs),
    /// Largest degree carrying a finite summand, against the skeleton thresholds
    FiniteSupport(WindowArgs),
    /// Compare the action on the c-fold Thom spectrum with the untwisted one
    ThomLinear(WindowArgs),
    /// Surjectivity onto free parts along consecutive Tate stages
    TateCheck {
        #[command(flatten)]
        pk: PkArgs,
        /// Bottom cell of the last stage
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        bot: i64,
        /// Top cell (defaults to bot plus twice p^k(p-1))
        #[arg(long, allow_hyphen_values = true)]
        top: Option<i64>,
        /// Number of consecutive stages
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        stage: u32,
    },
    /// p = 2, k = 1 splitting pattern of CP^top
    KoPattern {
        #[arg(long)]
        top: i64,
    },
    /// p-adic order of the sphere orientation of the line bundle over CP^n
    OrientOrder {
        #[arg(long, value_parser = parse_prime)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Orientation order bound at height k(p-1)
    Bound(PkArgs),
    /// Known orders against the bound and the conjectured p^k
    KnownOrders {
        #[command(flatten)]
        pk: PkArgs,
        /// Evaluate at this skeleton dimension instead of p^k(p-1) - 1
        #[arg(long)]
        n: Option<u64>,
    },
    /// Search for an order-p unit in the height k(p-1) endomorphism ring
    OrderPElement {
        #[command(flatten)]
        pk: PkArgs,
        /// T-adic precision (defaults to 3k(p-1))
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Digits of zeta - 1 below T^k vanish and the k-th is a unit
    VerifyTk {
        #[command(flatten)]
        pk: PkArgs,
        #[arg(long)]
        precision: Option<usize>,
    },
    /// Run the battery over a JSON grid of {p, k, c, top} points
    Sweep {
        #[arg(long)]
        grid: std::path::PathBuf,
        /// T-adic precision for the order-p search at every point
        #[arg(long)]
        precision: Option<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Decompose(_) => "decompose",
            Command::FreeGens(_) => "free-gens",
            Command::FiniteSupport(_) => "finite-support",
            Command::ThomLinear(_) => "thom-linear",
            Command::TateCheck { .. } => "tate-check",
            Command::KoPattern { .. } => "ko-pattern",
            Command::OrientOrder { .. } => "orient-order",
            Command::Bound(_) => "bound",
            Command::KnownOrders { .. } => "known-orders",
            Command::OrderPElement { .. } => "order-p-element",
            Command::VerifyTk { .. } => "verify-tk",
            Command::Sweep { .. } => "sweep",
        }
    }

    pub fn inputs(&self) -> Value {
        let pk = |a: &PkArgs| json!({ "p": a.p, "k": a.k });
        let window = |w: &WindowArgs| json!({ "p": w.pk.p, "k": w.pk.k, "c": w.c, "top": w.top });
        match self {
            Command::Decompose(w) | Command::FreeGens(w) | Command::FiniteSupport(w) | Command::ThomLinear(w) => {
                window(w)
            }
            Command::TateCheck { pk: a, bot, top, stage } => {
                json!({ "p": a.p, "k": a.k, "bot": bot, "top": top, "stage": stage })
            }
            Command::KoPattern { top } => json!({ "top": top }),
            Command::OrientOrder { p, n } => json!({ "p": p, "n": n }),
            Command::Bound(a) => pk(a),
            Command::KnownOrders { pk: a, n } => json!({ "p": a.p, "k": a.k, "n": n }),
            Command::OrderPElement { pk: a, precision } | Command::VerifyTk { pk: a, precision } => {
                json!({ "p": a.p, "k": a.k, "precision": precision })
            }
            Command::Sweep { grid, precision } => json!({ "grid": grid.display().to_string(), "precision": precision }),
        }
    }
}

pub type Outcome = (Value, Vec<Verdict>);

/// `p^e` in decimal.
pub fn power_string(p: u64, e: u64) -> String {
    let e = u32::try_from(e).expect("exponent fits in u32");
    BigUint::from(p).pow(e).to_string()
}

pub fn decompose(w: &WindowArgs) -> Result<Outcome, CliError> {
    let params = w.pk.params()?;
    let r = decompose_stunted(params, w.c, w.top)?;
    let p = params.p as usize;
    let counted = r.free_rank * p
        + r.finite_blocks.iter().map(|b| b.size).sum::<usize>()
        + r.boundary_blocks.iter().map(|b| b.size).sum::<usize>();
    let basis = StuntedBasis::new(w.c, w.top)?;
    let verdicts = vec![
        Verdict::new("blocks account for every cell", "splitting::decompose_stunted", counted == basis.len()),
        Verdict::new(
            "homology action is the transpose of the cohomology action",
            "stunted::duality_check",
            duality_check(params, basis),
        ),
    ];
    let mut results = serde_json::to_value(&r)?;
    results["jordan_blocks"] = json!(r.jordan.blocks);
    results["beta"] = json!(beta_constants(params));
    Ok((results, verdicts))
}

pub fn free_gens(w: &WindowArgs) -> Result<Outcome, CliError> {
    let check = verify_free_generators(w.pk.params()?, w.c, w.top)?;
    let verdicts = vec![
        Verdict::new("predicted generators survive P_k^(p-1)", "splitting::verify_free_generators", check.all_nonzero),
        Verdict::new("their images are independent", "splitting::verify_free_generators", check.independent),
        Verdict::new("their number equals the free rank", "splitting::verify_free_generators", check.count_matches),
    ];
    let mut results = serde_json::to_value(&check)?;
    results["literal_threshold_sound"] = json!(check.literal_threshold_sound());
    Ok((results, verdicts))
}

pub fn finite_support(w: &WindowArgs) -> Result<Outcome, CliError> {
    let s = finite_part_support(w.pk.params()?, w.c, w.top)?;
    let verdicts = vec![Verdict::new(
        "finite part lies in degrees <= 2(c + p^k(p-1) - 1)",
        "splitting::finite_part_support",
        s.within_skeleton,
    )];
    Ok((serde_json::to_value(&s)?, verdicts))
}

pub fn thom_linear(w: &WindowArgs) -> Result<Outcome, CliError> {
    let params = w.pk.params()?;
    let t = thom_shift_linearity(params, w.c, w.top)?;
    let divisible = w.c.rem_euclid(params.p as i64) == 0;
    let verdicts = vec![Verdict::new(
        "action is untwisted when p divides c",
        "splitting::thom_shift_linearity",
        !divisible || t.linear,
    )];
    let mut results = serde_json::to_value(&t)?;
    results["p_divides_c"] = json!(divisible);
    Ok((results, verdicts))
}

/// Stages `bot - j·β̂ → bot - (j-1)·β̂` for `j = stage, …, 1`.
pub fn tate_check(pk: &PkArgs, bot: i64, top: Option<i64>, stage: u32) -> Result<Outcome, CliError> {
    let params = pk.params()?;
    let beta_hat = beta_constants(params).beta_hat;
    let top = top.unwrap_or(bot + 2 * beta_hat);
    let mut stages = Vec::new();
    let mut verdicts = Vec::new();
    for j in (1..=stage as i64).rev() {
        let s = bot - j * beta_hat;
        let t = tate_transition_surjective(params, s, top)?;
        verdicts.push(Verdict::new(
            format!("stage {s} -> {} surjects onto the free part", t.target_bot),
            "splitting::tate_transition_surjective",
            t.passed(),
        ));
        stages.push(t);
    }
    Ok((json!({ "beta_hat": beta_hat, "top": top, "stages": stages }), verdicts))
}

pub fn ko(top: i64) -> Result<Outcome, CliError> {
    let r = ko_pattern(top)?;
    let verdicts = vec![Verdict::new(
        "one finite cell in degree 0, free bottoms in degrees 4j-2",
        "splitting::ko_pattern",
        r.matches,
    )];
    Ok((serde_json::to_value(&r)?, verdicts))
}

pub fn orient_order(p: u64, n: u64) -> Result<Outcome, CliError> {
    let v = theta_sphere_valuation(p, n)?;
    let results = json!({ "valuation": v, "order": power_string(p, v) });
    Ok((results, Vec::new()))
}

fn orientation_outcome(p: u64, k: u32, n: Option<u64>, with_known: bool) -> Result<Outcome, CliError> {
    let r = if with_known {
        known_orders_report(p, k, n)?
    } else {
        eo_bound(p, k)?
    };
    let mut verdicts = Vec::new();
    if r.skeleton == (beta_constants(PkParams::new(p, k)?).beta_hat - 1) as u64 {
        verdicts.push(Verdict::new(
            "sphere valuation on the p^k(p-1)-1 skeleton equals p^k - 1",
            "orientation::theta_sphere_valuation",
            r.sphere_valuation == r.bound_valuation,
        ));
    }
    verdicts.push(Verdict::new(
        "conjectured order divides the bound",
        "orientation::eo_bound",
        r.conjecture_valuation <= r.bound_valuation,
    ));
    if with_known {
        verdicts.push(Verdict::new(
            "conjecture | known | bound",
            "orientation::known_orders_report",
            r.divisibility_holds(),
        ));
    }
    let mut results = serde_json::to_value(&r)?;
    results["bound_order"] = json!(power_string(p, r.bound_valuation));
    results["sphere_order"] = json!(power_string(p, r.sphere_valuation));
    results["conjecture_order"] = json!(power_string(p, r.conjecture_valuation));
    results["gap"] = json!(r.gap());
    Ok((results, verdicts))
}

pub fn bound(pk: &PkArgs) -> Result<Outcome, CliError> {
    orientation_outcome(pk.p, pk.k, None, false)
}

pub fn known_orders(pk: &PkArgs, n: Option<u64>) -> Result<Outcome, CliError> {
    orientation_outcome(pk.p, pk.k, n, true)
}

fn default_precision(pk: &PkArgs, precision: Option<usize>) -> usize {
    precision.unwrap_or(3 * pk.k as usize * (pk.p as usize - 1))
}

pub fn order_p_element(pk: &PkArgs, precision: Option<usize>) -> Result<Outcome, CliError> {
    let m = default_precision(pk, precision);
    let zeta = find_order_p_unit(pk.p, pk.k, m)?;
    let n = pk.k * (pk.p as u32 - 1);
    let ring = EndoRing::new(pk.p, n, m)?;
    let one = ring.one();
    let zp = ring.pow(&zeta, pk.p)?;
    let c = ring.sub(&zeta, &one)?;
    let v = ring.t_valuation(&c);
    let verdicts = vec![
        Verdict::new("zeta^p = 1 to precision", "morava::find_order_p_unit", zp == one),
        Verdict::new("zeta != 1", "morava::find_order_p_unit", zeta != one),
    ];
    let results = json!({
        "height": n,
        "precision": m,
        "residue_modulus": ring.residue_field().modulus(),
        "digits": zeta.digits(),
        "valuation_of_zeta_minus_one": v.to_string(),
    });
    Ok((results, verdicts))
}

pub fn verify_tk(pk: &PkArgs, precision: Option<usize>) -> Result<Outcome, CliError> {
    let m = default_precision(pk, precision);
    let r = verify_tk_lemma(pk.p, pk.k, m)?;
    let op = "morava::verify_tk_lemma";
    let verdicts = vec![
        Verdict::new("zeta^p = 1 to precision", op, r.zeta_pow_is_one),
        Verdict::new("zeta != 1", op, r.zeta_not_one),
        Verdict::new("digits of zeta - 1 vanish below T^k", op, r.lower_vanish),
        Verdict::new("digit k of zeta - 1 is a unit", op, r.leading_unit),
        Verdict::new("v(zeta - 1)(p - 1) = 1", op, r.valuation_matches),
    ];
    let mut results = serde_json::to_value(&r)?;
    results["valuation_display"] = json!(r.valuation.to_string());
    Ok((results, verdicts))
}

pub fn coproduct(p: u64, k: u32) -> Result<Outcome, CliError> {
    let r = coproduct_chi_check(p, k)?;
    let op = "nilpotent::coproduct_chi_check";
    let verdicts = vec![
        Verdict::new("coproduct of chi is chi⊗1 + 1⊗chi + chi⊗chi", op, r.identity_holds),
        Verdict::new("chi^p = 0", op, r.chi_nilpotent),
        Verdict::new("chi is primitive in the associated graded", op, r.primitive_in_graded),
    ];
    Ok((serde_json::to_value(&r)?, verdicts))
}

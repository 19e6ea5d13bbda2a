//! Acceptance suite. Runs each criterion, prints one PASS/FAIL line per
//! criterion and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use eo_algebra::fp::FpMatrix;
use eo_algebra::fp::PrimeField;
use eo_algebra::morava::{verify_tk_lemma, EndoRing};
use eo_algebra::nilpotent::{coproduct_chi_check, JordanType, NilOperator};
use eo_algebra::orientation::{known_orders_report, theta_sphere_valuation, KnownSource};
use eo_algebra::splitting::{
    beta_constants, finite_part_support, tate_transition_surjective, thom_shift_linearity,
    verify_free_generators,
};
use eo_algebra::stunted::PkParams;
use eo_toolkit::report::Report;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(p: u64, k: u32) -> PkParams {
    PkParams::new(p, k).unwrap()
}

fn ko_pattern_via_binary() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_eo-tool"))
        .args(["decompose", "--p", "2", "--k", "1", "--c", "0", "--top", "40", "--json"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("exit status {:?}", out.status))?;
    let report: Report = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let finite = report.results["finite_blocks"].as_array().unwrap();
    ensure(finite.len() == 1, || format!("finite blocks {finite:?}"))?;
    ensure(finite[0]["size"] == 1 && finite[0]["socle"] == 0, || format!("finite block {:?}", finite[0]))?;
    let finite_degrees = &report.results["finite_socle_degrees"];
    ensure(*finite_degrees == serde_json::json!([0]), || format!("finite degrees {finite_degrees}"))?;
    let bottoms: Vec<i64> = report.results["free_socle_degrees"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_i64().unwrap())
        .collect();
    // Cells b_{2j} -> b_{2j-1} for 1 <= 2j <= 40, bottom in degree 2(2j-1).
    let expected: Vec<i64> = (1..=20).map(|j| 4 * j - 2).collect();
    ensure(bottoms == expected, || format!("free bottoms {bottoms:?}"))?;
    let boundary = report.results["boundary_blocks"].as_array().unwrap();
    ensure(boundary.is_empty(), || format!("boundary blocks {boundary:?}"))?;
    Ok(format!("finite {{deg 0}}, free bottoms 2, 6, .., {}", expected.last().unwrap()))
}

fn free_generator_prediction() -> Outcome {
    let (mut checked, mut literal_off) = (0, 0);
    for (p, k) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
        let pi = p as i64;
        let shift = pi.pow(k) - 1;
        let beta = (pi - 1) * shift;
        for c in [0, pi, 2 * pi, -pi] {
            let top = 4 * pi * shift + c.max(0);
            let check = verify_free_generators(params(p, k), c, top).map_err(|e| e.to_string())?;
            let expected: Vec<i64> = (c..=top).filter(|j| j % pi == 0 && j - beta >= c).collect();
            ensure(check.predicted == expected, || format!("({p},{k}) c={c}: predicted {:?}", check.predicted))?;
            ensure(check.passed(), || format!("({p},{k}) c={c} top={top}: {check:?}"))?;
            checked += 1;
            literal_off += usize::from(!check.literal_threshold_sound());
        }
    }
    Ok(format!("{checked} windows, threshold pi - beta >= c; i > (beta - c)/p overshoots in {literal_off}"))
}

/// `max{r + ν_p(r) : r(p-1) <= n}` by direct enumeration.
fn theta_oracle(p: u64, n: u64) -> u64 {
    (1..=n / (p - 1))
        .map(|r| {
            let (mut x, mut v) = (r, 0);
            while x % p == 0 {
                x /= p;
                v += 1;
            }
            r + v
        })
        .max()
        .unwrap_or(0)
}

fn bound_identity() -> Outcome {
    for p in [2u64, 3, 5, 7] {
        for k in 1..=3u32 {
            let n = p.pow(k) * (p - 1) - 1;
            let v = theta_sphere_valuation(p, n).map_err(|e| e.to_string())?;
            ensure(v == p.pow(k) - 1, || format!("({p},{k}): valuation {v}"))?;
            ensure(theta_oracle(p, n) == v, || format!("({p},{k}): oracle disagrees"))?;
        }
    }
    Ok("12 pairs".into())
}

fn thom_shift() -> Outcome {
    for (p, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let pi = p as i64;
        let top = 4 * pi.pow(k);
        for c in [pi, 2 * pi, -pi] {
            let t = thom_shift_linearity(params(p, k), c, top).map_err(|e| e.to_string())?;
            ensure(t.linear, || format!("({p},{k}) c={c}: not linear at {:?}", t.first_mismatch))?;
        }
        for r in 1..pi {
            let any_nonlinear = [r, r + pi, r - pi]
                .iter()
                .any(|&c| !thom_shift_linearity(params(p, k), c, top).unwrap().linear);
            ensure(any_nonlinear, || format!("({p},{k}): residue {r} always linear"))?;
        }
    }
    Ok("3 pairs".into())
}

fn finite_support() -> Outcome {
    let mut log = Vec::new();
    for (p, k) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let bh = beta_constants(params(p, k)).beta_hat;
        let s = finite_part_support(params(p, k), 0, 6 * bh).map_err(|e| e.to_string())?;
        let max = s.max_degree.unwrap_or(i64::MIN);
        ensure(max <= 2 * (bh - 1), || format!("({p},{k}): max finite degree {max}"))?;
        ensure(s.within_skeleton, || format!("({p},{k}): {s:?}"))?;
        log.push(format!(
            "({p},{k}) max {max} <= {} (alt {}: {})",
            s.skeleton_degree, s.alt_skeleton_degree, s.within_alt_skeleton
        ));
    }
    Ok(log.join("; "))
}

fn tate_stages() -> Outcome {
    for (p, k) in [(2u64, 1u32), (3, 1), (2, 2)] {
        let bh = beta_constants(params(p, k)).beta_hat;
        for j in 1..=5 {
            let t = tate_transition_surjective(params(p, k), -j * bh, 2 * bh).map_err(|e| e.to_string())?;
            ensure(t.passed(), || format!("({p},{k}) stage {j}: {t:?}"))?;
            ensure(t.target_bot == -(j - 1) * bh, || "stage bottoms are not consecutive".into())?;
        }
    }
    Ok("5 stages each".into())
}

fn order_p_unit() -> Outcome {
    let mut log = Vec::new();
    for (p, k) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let n = k * (p as u32 - 1);
        for m in [3 * n as usize, 4 * n as usize] {
            let r = verify_tk_lemma(p, k, m).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("({p},{k},{m}): {r:?}"))?;
            // Replay ζ^p = 1 with a fresh ring and plain repeated multiplication.
            let ring = EndoRing::new(p, n, m).unwrap();
            let zeta = ring.from_digits(r.zeta_digits.clone());
            let mut acc = ring.one();
            for _ in 0..p {
                acc = ring.mul(&acc, &zeta).unwrap();
            }
            ensure(acc == ring.one() && zeta != ring.one(), || format!("({p},{k},{m}): replay failed"))?;
            let digits: Vec<u32> = r.tbar.iter().map(|d| d.0).collect();
            ensure(digits[..k as usize - 1].iter().all(|&d| d == 0), || format!("lower digits {digits:?}"))?;
            ensure(digits[k as usize - 1] != 0, || format!("digit {k} vanishes"))?;
        }
        log.push(format!("({p},{k}) v = {}", verify_tk_lemma(p, k, 3 * n as usize).unwrap().valuation));
    }
    Ok(log.join("; "))
}

fn coproduct() -> Outcome {
    for p in [2u64, 3, 5] {
        for k in 1..=2 {
            let r = coproduct_chi_check(p, k).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("p={p} k={k}: {r:?}"))?;
        }
    }
    Ok("p = 2, 3, 5".into())
}

/// Linear algebra over `F_p` on plain vectors, independent of the library.
mod oracle {
    pub fn mul_vec(p: u64, m: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        m.iter()
            .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p))
            .collect()
    }

    pub fn mul(p: u64, a: &[Vec<u64>], b: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = b[0].len();
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().enumerate().fold(0, |acc, (t, x)| (acc + x * b[t][j]) % p))
                    .collect()
            })
            .collect()
    }

    fn inv(p: u64, a: u64) -> u64 {
        (1..p).find(|x| a * x % p == 1).unwrap()
    }

    /// Reduced row echelon form, returning pivot columns.
    pub fn rref(p: u64, rows: &mut [Vec<u64>]) -> Vec<usize> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let s = inv(p, rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = *x * s % p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..cols {
                        rows[i][j] = (rows[i][j] + p * p - f * rows[r][j]) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(p: u64, vectors: &[Vec<u64>]) -> usize {
        let mut rows = vectors.to_vec();
        rref(p, &mut rows).len()
    }

    /// Basis of `{v : m v = 0}`.
    pub fn kernel(p: u64, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = m[0].len();
        let mut rows = m.to_vec();
        let pivots = rref(p, &mut rows);
        (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; n];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - rows[r][free]) % p;
                }
                v
            })
            .collect()
    }

    pub fn identity(n: usize) -> Vec<Vec<u64>> {
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
    }

    pub fn inverse(p: u64, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = m.len();
        let mut rows: Vec<Vec<u64>> = m
            .iter()
            .zip(identity(n))
            .map(|(r, e)| r.iter().copied().chain(e).collect())
            .collect();
        let pivots = rref(p, &mut rows);
        assert_eq!(pivots, (0..n).collect::<Vec<_>>(), "singular");
        rows.into_iter().map(|r| r[n..].to_vec()).collect()
    }

    /// Block sizes from an explicit Jordan chain basis, built greedily from
    /// the longest chains down.
    pub fn chain_basis_blocks(p: u64, m: &[Vec<u64>]) -> Vec<usize> {
        let n = m.len();
        let mut chosen: Vec<Vec<u64>> = Vec::new();
        let mut blocks = Vec::new();
        let mut power = identity(n);
        let mut powers = vec![power.clone()];
        for _ in 0..p {
            power = mul(p, &power, m);
            powers.push(power.clone());
        }
        assert!(powers[p as usize].iter().flatten().all(|&x| x == 0), "not nilpotent");
        for j in (1..=p as usize).rev() {
            for v in kernel(p, &powers[j]) {
                let mut chain = vec![v];
                for _ in 1..j {
                    let next = mul_vec(p, m, chain.last().unwrap());
                    chain.push(next);
                }
                let mut trial = chosen.clone();
                trial.extend(chain.iter().cloned());
                if rank(p, &trial) == chosen.len() + j {
                    chosen = trial;
                    blocks.push(j);
                }
            }
        }
        assert_eq!(chosen.len(), n, "chains do not span");
        // A chain basis: conjugating m into it must give the block form.
        let mut by_columns = vec![vec![0; n]; n];
        for (c, v) in chosen.iter().enumerate() {
            for r in 0..n {
                by_columns[r][c] = v[r];
            }
        }
        let conj = mul(p, &mul(p, &inverse(p, &by_columns), m), &by_columns);
        let mut start = 0;
        for &b in &blocks {
            for t in 0..b {
                let col = start + t;
                for r in 0..n {
                    let want = u64::from(t + 1 < b && r == col + 1);
                    assert_eq!(conj[r][col], want, "not a chain basis");
                }
            }
            start += b;
        }
        blocks.sort_unstable();
        blocks
    }
}

fn random_type(rng: &mut ChaCha8Rng, p: usize, max_dim: usize) -> Vec<usize> {
    let dim = rng.gen_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut used = 0;
    while used < dim {
        let b = rng.gen_range(1..=p.min(dim - used));
        blocks.push(b);
        used += b;
    }
    blocks
}

fn random_invertible(rng: &mut ChaCha8Rng, p: u64, n: usize) -> Vec<Vec<u64>> {
    loop {
        let m: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p)).collect()).collect();
        if oracle::rank(p, &m) == n {
            return m;
        }
    }
}

/// Ungraded: a block sum with random nonzero chain coefficients, conjugated
/// by a random invertible matrix.
fn random_ungraded(rng: &mut ChaCha8Rng, p: u64) -> Vec<Vec<u64>> {
    let blocks = random_type(rng, p as usize, 30);
    let n: usize = blocks.iter().sum();
    let mut m = vec![vec![0; n]; n];
    let mut start = 0;
    for b in blocks {
        for t in 1..b {
            m[start + t - 1][start + t] = rng.gen_range(1..p);
        }
        start += b;
    }
    let s = random_invertible(rng, p, n);
    oracle::mul(p, &oracle::mul(p, &s, &m), &oracle::inverse(p, &s))
}

/// Graded: chains stepping down by a fixed degree, shuffled, then mixed by a
/// random automorphism preserving each degree.
fn random_graded(rng: &mut ChaCha8Rng, p: u64) -> (Vec<Vec<u64>>, Vec<i64>) {
    let blocks = random_type(rng, p as usize, 30);
    let n: usize = blocks.iter().sum();
    let step = rng.gen_range(1..4i64);
    let mut degrees = Vec::with_capacity(n);
    let mut m = vec![vec![0; n]; n];
    let mut start = 0;
    for b in blocks {
        let base = rng.gen_range(0..4i64);
        for t in 0..b {
            degrees.push(base + step * t as i64);
            if t > 0 {
                m[start + t - 1][start + t] = rng.gen_range(1..p);
            }
        }
        start += b;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let degrees: Vec<i64> = perm.iter().map(|&i| degrees[i]).collect();
    let m: Vec<Vec<u64>> = perm.iter().map(|&i| perm.iter().map(|&j| m[i][j]).collect()).collect();
    // Graded change of basis: invertible on each degree, zero across degrees.
    let s = loop {
        let s: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| if degrees[i] == degrees[j] { rng.gen_range(0..p) } else { 0 }).collect())
            .collect();
        if oracle::rank(p, &s) == n {
            break s;
        }
    };
    (oracle::mul(p, &oracle::mul(p, &s, &m), &oracle::inverse(p, &s)), degrees)
}

fn to_matrix(p: u64, m: &[Vec<u64>]) -> FpMatrix {
    let n = m.len();
    FpMatrix::from_fn(PrimeField::new(p).unwrap(), n, n, |i, j| m[i][j])
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    let mut total = 0;
    for p in [2u64, 3, 5] {
        for trial in 0..50 {
            let (m, op) = if trial % 2 == 0 {
                let m = random_ungraded(&mut rng, p);
                let op = NilOperator::ungraded(to_matrix(p, &m)).map_err(|e| e.to_string())?;
                (m, op)
            } else {
                let (m, degrees) = random_graded(&mut rng, p);
                let op = NilOperator::graded(to_matrix(p, &m), degrees).map_err(|e| e.to_string())?;
                (m, op)
            };
            let expected = JordanType::new(p, oracle::chain_basis_blocks(p, &m));
            let got = op.jordan_type();
            ensure(got == expected, || format!("p={p} trial {trial}: {got:?} vs {expected:?}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} operators"))
}

fn known_orders() -> Outcome {
    for (p, k) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (5, 1)] {
        let r = known_orders_report(p, k, None).map_err(|e| e.to_string())?;
        ensure(r.divisibility_holds(), || format!("({p},{k}): {r:?}"))?;
        ensure(r.conjecture_valuation == k as u64, || "conjecture exponent".into())?;
        ensure(r.bound_valuation == p.pow(k) - 1, || "bound exponent".into())?;
        ensure(!r.known.is_empty(), || format!("({p},{k}): no known value"))?;
        for kv in &r.known {
            let expected = match kv.source {
                KnownSource::HeightPMinusOne => 1,
                KnownSource::RealJohnsonWilson => k as u64 * (p - 1),
            };
            ensure(kv.valuation == expected, || format!("({p},{k}): {kv:?}"))?;
            ensure(
                r.conjecture_valuation <= kv.valuation && kv.valuation <= r.bound_valuation,
                || format!("({p},{k}): {kv:?} out of range"),
            )?;
        }
    }
    Ok("5 pairs".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("KO pattern at p=2, top 40", ko_pattern_via_binary),
        ("free-generator prediction", free_generator_prediction),
        ("sphere valuation identity on the skeleton", bound_identity),
        ("Thom-shift linearity", thom_shift),
        ("finite-part skeletal support", finite_support),
        ("Tate transition surjectivity", tate_stages),
        ("order-p unit and valuation", order_p_unit),
        ("coproduct primitivity", coproduct),
        ("rank profile vs chain basis oracle", oracle_equivalence),
        ("known-orders divisibility", known_orders),
    ];
    let prev_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}  PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}  FAIL  {name}: {why}", i + 1);
            }
        }
    }
    std::panic::set_hook(prev_hook);
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

//! Verification suites run by `tortkara verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use tortkara_core::double::{self, LambdaMethod, RMethod};
use tortkara_core::scalar::{int, q};
use tortkara_core::span::{self, membership_a};
use tortkara_core::tensor::{invert_r, is_lie};
use tortkara_core::trees::{self, RhoHallMethod};
use tortkara_core::{pwl, AreaTree, HallBasis, HallKind, Result, RhoMethod, Scalar, TensorElem, TimeSeries, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Dynkin,
    Lambda,
    Tortkara,
    Pwl,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Core, Suite::Dynkin, Suite::Lambda, Suite::Tortkara, Suite::Pwl];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Dynkin => "dynkin",
            Suite::Lambda => "lambda",
            Suite::Tortkara => "tortkara",
            Suite::Pwl => "pwl",
        }
    }
}

/// One named assertion. `report_only` checks never fail a run.
#[derive(Debug, Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub report_only: bool,
    pub detail: String,
}

impl Check {
    pub fn to_json(&self) -> serde_json::Value {
        json!({ "suite": self.suite, "name": self.name, "passed": self.passed, "report_only": self.report_only, "detail": self.detail })
    }
}

struct Collector {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Collector {
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check { suite: self.suite, name: name.into(), passed, report_only: false, detail });
    }

    fn report(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<String>) {
        let (passed, detail) = match f() {
            Ok(s) => (true, s),
            Err(e) => (false, format!("error: {e}")),
        };
        self.checks.push(Check { suite: self.suite, name: name.into(), passed, report_only: true, detail });
    }
}

fn nonempty_words(d: u32, level: usize) -> Vec<Word> {
    Word::all_upto(d, level).into_iter().filter(|w| !w.is_empty()).collect()
}

fn word_elem(d: u32, w: &Word) -> Result<TensorElem> {
    TensorElem::from_word(d, w.clone())
}

fn count(n: usize, what: &str) -> String {
    format!("{n} {what}")
}

fn random_path(rng: &mut ChaCha8Rng, d: u32, segments: usize) -> Result<TimeSeries> {
    let mut pts = vec![vec![Scalar::from_integer(0.into()); d as usize]];
    for _ in 0..segments {
        let last = pts.last().expect("origin").clone();
        pts.push(last.iter().map(|c| c + q(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect());
    }
    TimeSeries::new(d, pts)
}

fn core(c: &mut Collector, d: u32, level: usize) {
    let half = level.div_ceil(2).max(1);
    let words = nonempty_words(d, half);
    c.check("shuffle is commutative and splits into half-shuffles", || {
        for a in &words {
            for b in &words {
                let (x, y) = (word_elem(d, a)?, word_elem(d, b)?);
                let s = x.shuffle(&y)?;
                if s != y.shuffle(&x)? || s != &x.half_shuffle(&y)? + &y.half_shuffle(&x)? {
                    return Ok((false, format!("fails for {a}, {b}")));
                }
            }
        }
        Ok((true, count(words.len() * words.len(), "pairs")))
    });
    let small = nonempty_words(d, (level / 3).max(1));
    c.check("shuffle associativity and the Zinbiel identity", || {
        for a in &small {
            for b in &small {
                for e in &small {
                    let (x, y, z) = (word_elem(d, a)?, word_elem(d, b)?, word_elem(d, e)?);
                    let assoc = x.shuffle(&y)?.shuffle(&z)? == x.shuffle(&y.shuffle(&z)?)?;
                    let zin = x.half_shuffle(&y.half_shuffle(&z)?)? == x.shuffle(&y)?.half_shuffle(&z)?;
                    if !assoc || !zin {
                        return Ok((false, format!("fails for {a}, {b}, {e}")));
                    }
                }
            }
        }
        Ok((true, count(small.len().pow(3), "triples")))
    });
    c.check("area is antisymmetric and lands in the area span", || {
        let letters = nonempty_words(d, 1);
        for a in &words {
            for l in &letters {
                let (x, y) = (span::arealb_word(d, a)?, word_elem(d, l)?);
                let xy = x.area(&y)?;
                if xy != -y.area(&x)? || !membership_a(&xy).is_member() {
                    return Ok((false, format!("fails for arealb({a}), {l}")));
                }
            }
        }
        Ok((true, count(words.len() * letters.len(), "pairs")))
    });
    c.check("exp/log round trip and antipode on signatures", || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 0..10 {
            let x = random_path(&mut rng, d, 3)?;
            let g = pwl::signature_pwl(&x, level)?;
            let l = g.log_conc(level)?;
            if l.exp_conc(level)? != g || !is_lie(&l, level) || g.antipode().concat(&g)?.truncate(level) != TensorElem::unit(d) {
                return Ok((false, format!("fails on path {k}")));
            }
        }
        Ok((true, "10 signatures".into()))
    });
}

fn dynkin(c: &mut Collector, d: u32, level: usize) {
    let words = nonempty_words(d, level);
    c.check("D(w) = sum rho(u) sh v", || {
        for w in &words {
            let mut sum = TensorElem::zero(d);
            for k in 1..=w.len() {
                sum += &word_elem(d, &w.slice(0, k))?.rho(RhoMethod::Recursive).shuffle(&word_elem(d, &w.slice(k, w.len()))?)?;
            }
            if sum != word_elem(d, w)?.grading_d() {
                return Ok((false, format!("fails for {w}")));
            }
        }
        Ok((true, count(words.len(), "words")))
    });
    c.check("rho: recursion, via D and permutation expansion agree", || {
        for w in &words {
            let x = word_elem(d, w)?;
            let a = x.rho(RhoMethod::Recursive);
            if a != x.rho(RhoMethod::ViaD) || a != span::rho_permutation(d, w)? {
                return Ok((false, format!("fails for {w}")));
            }
        }
        Ok((true, count(words.len(), "words")))
    });
    c.check("Hall elements are Lie and invert_r round-trips", || {
        let basis = HallBasis::cached(d, level, HallKind::Lyndon)?;
        let mut x = TensorElem::zero(d);
        for id in 0..basis.len() {
            if !is_lie(basis.p(id), level) {
                return Ok((false, format!("P_{} fails the Dynkin test", basis.element(id).word)));
            }
            x.add_scaled(basis.p(id), &q(id as i64 % 5 - 2, 1 + id as i64 % 3));
        }
        let g = invert_r(&x, level)?;
        Ok((g.dynkin_r().truncate(level) == x && invert_r(&g.dynkin_r(), level)? == g, count(basis.len(), "Hall elements")))
    });
    c.check("(D - id)R = R > R = R >_Sym R / 2, recursion = direct", || {
        let r = double::r_element(d, level, RMethod::Direct)?;
        let lhs = &r.hat_d() - &r;
        let ok = r == double::r_element(d, level, RMethod::Recursion)? && lhs == r.pre_lie(&r)? && lhs == r.pre_lie_sym(&r)?.scale(&q(1, 2));
        Ok((ok, format!("level {level}")))
    });
    let tl = level.min(5);
    c.check("R from planar trees", || {
        let r = double::r_element(d, tl, RMethod::Direct)?;
        for n in 1..=tl {
            if trees::r_via_trees(d, n)? != r.proj(n) {
                return Ok((false, format!("differs at level {n}")));
            }
        }
        Ok((true, format!("levels 1..={tl}")))
    });
}

fn lambda(c: &mut Collector, d: u32, level: usize) {
    for kind in [HallKind::Lyndon, HallKind::StandardHall] {
        let tag = match kind {
            HallKind::Lyndon => "lyndon",
            HallKind::StandardHall => "hall",
        };
        c.check(format!("{tag}: duality and zeta = pi1T S"), || {
            let basis = HallBasis::cached(d, level, kind)?;
            for n in 1..=level {
                for &a in basis.level(n) {
                    if basis.s(a).pi1_transpose() != *basis.z(a) {
                        return Ok((false, format!("zeta mismatch at {}", basis.element(a).word)));
                    }
                    for &b in basis.level(n) {
                        let want = if a == b { int(1) } else { int(0) };
                        if basis.s(a).pairing(basis.p(b))? != want {
                            return Ok((false, format!("<S_{}, P_{}> wrong", basis.element(a).word, basis.element(b).word)));
                        }
                    }
                }
            }
            Ok((true, count(basis.len(), "elements")))
        });
        c.check(format!("{tag}: exp of sum zeta x P is S"), || {
            let basis = HallBasis::cached(d, level, kind)?;
            Ok((double::coordinate_sum(&basis, level)?.exp_box(level)? == double::s_element(d, level)?, format!("level {level}")))
        });
        c.check(format!("{tag}: Rho_h by recursion, q-trees and p-trees"), || {
            let basis = HallBasis::cached(d, level, kind)?;
            for id in 0..basis.len() {
                let h = basis.element(id).word.clone();
                let direct = basis.s(id).rho(RhoMethod::Recursive);
                for m in [RhoHallMethod::Recursion, RhoHallMethod::QTrees, RhoHallMethod::PTrees] {
                    if trees::rho_hall(&basis, &h, m)? != direct {
                        return Ok((false, format!("{m:?} differs at {h}")));
                    }
                }
            }
            Ok((true, count(basis.len(), "elements")))
        });
    }
    let tl = level.min(4);
    c.check("Lambda: log of S, recursion and trees agree", || {
        let log = double::lambda_element(d, level, LambdaMethod::LogOfS)?;
        if log != double::lambda_element(d, level, LambdaMethod::Recursion)? {
            return Ok((false, "recursion differs".into()));
        }
        for n in 1..=tl {
            if trees::lambda_via_trees(d, n)? != log.proj(n) {
                return Ok((false, format!("trees differ at level {n}")));
            }
        }
        Ok((true, format!("trees through level {tl}")))
    });
}

fn tortkara(c: &mut Collector, d: u32, level: usize) {
    let letters: Vec<TensorElem> = (1..=d as u8).map(|l| TensorElem::letter(d, l)).collect::<Result<_>>().unwrap_or_default();
    c.check("Tortkara identity on letter quadruples", || {
        let mut n = 0;
        for a in &letters {
            for b in &letters {
                for e in &letters {
                    for f in &letters {
                        if !span::tortkara_check(a, b, e, Some(f))? {
                            return Ok((false, "fails".into()));
                        }
                        n += 1;
                    }
                }
            }
        }
        Ok((true, count(n, "quadruples")))
    });
    c.check("theta expansion equals arealb", || {
        let words = nonempty_words(d, level.min(6));
        for w in &words {
            if span::theta_expansion(d, w)? != span::arealb_word(d, w)? {
                return Ok((false, format!("fails for {w}")));
            }
        }
        Ok((true, count(words.len(), "words")))
    });
    c.check("rho images and vol_n lie in the area span", || {
        for w in nonempty_words(d, level) {
            if !span::im_rho_in_a(d, &w)? {
                return Ok((false, format!("rho({w}) not in span")));
            }
        }
        for n in 2..=(d as usize).min(4) {
            if !membership_a(&span::vol_n(&letters[..n])?).is_member() {
                return Ok((false, format!("vol_{n} not in span")));
            }
        }
        Ok((true, format!("levels 1..={level}")))
    });
    c.check("areas and rho images generate", || {
        for n in 1..=level {
            let a = span::areas_generate_check(d, n)?;
            let r = span::rho_generate_check(d, n)?;
            if !a.full_rank || !r.full_rank {
                return Ok((false, format!("rank deficit at level {n}")));
            }
        }
        Ok((true, format!("levels 1..={level}")))
    });
    c.check("words as rho shuffles", || {
        let words = nonempty_words(d, level);
        for w in &words {
            if span::evaluate_rho_shuffles(d, &span::words_as_rho_shuffles(w)?)? != word_elem(d, w)? {
                return Ok((false, format!("fails for {w}")));
            }
        }
        Ok((true, count(words.len(), "words")))
    });
    if d == 2 {
        c.check("left bracketings span the area span", || {
            for n in 2..=level {
                let r = span::leftbracket_span_check(d, n)?;
                if !r.full_rank {
                    return Ok((false, format!("rank {} of {} at level {n}", r.rank, r.target)));
                }
            }
            Ok((true, format!("levels 2..={level}")))
        });
    } else {
        c.report("left bracketing ranks", || {
            let parts: Vec<String> = (2..=level)
                .map(|n| span::leftbracket_span_check(d, n).map(|r| format!("n={n} {}/{}", r.rank, r.target)))
                .collect::<Result<_>>()?;
            Ok(parts.join(", "))
        });
    }
}

fn pwl_suite(c: &mut Collector, d: u32, level: usize) {
    let leaves = level.min(4);
    c.check("discrete area along trees equals the signature pairing", || {
        let trees_: Vec<AreaTree> = (1..=leaves).map(|n| trees::enumerate_trees(d, n)).collect::<Result<Vec<_>>>()?.concat();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in 0..20 {
            let segments = rng.gen_range(1..=5);
            let x = random_path(&mut rng, d, segments)?;
            let sig = pwl::signature_pwl(&x, leaves)?;
            for t in &trees_ {
                if pwl::discrete_area_tree(t, &x)?.last() != &sig.pairing(&t.area_eval(d)?)? {
                    return Ok((false, format!("path {k}, tree {t}")));
                }
            }
        }
        Ok((true, format!("20 paths x {} trees", trees_.len())))
    });
    c.check("Chen multiplicativity on split paths", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let x = random_path(&mut rng, d, 4)?;
            let (a, b) = x.split(2)?;
            if pwl::signature_pwl(&a, level)?.concat(&pwl::signature_pwl(&b, level)?)?.truncate(level) != pwl::signature_pwl(&x, level)? {
                return Ok((false, "product differs".into()));
            }
        }
        Ok((true, "10 paths".into()))
    });
    if d >= 2 {
        c.check("unit square has area 2", || {
            let mut pts = vec![vec![int(0); d as usize]; 5];
            for (k, (a, b)) in [(1, 0), (1, 1), (0, 1), (0, 0)].into_iter().enumerate() {
                pts[k + 1][0] = int(a);
                pts[k + 1][1] = int(b);
            }
            let sq = TimeSeries::new(d, pts)?;
            let v = pwl::discrete_area_tree(&AreaTree::parse("a(1,2)")?, &sq)?.last().clone();
            Ok((v == int(2), format!("value {v}")))
        });
    }
    c.check("iterated trapezoid integral does not iterate", || {
        Ok(match pwl::find_iteration_witness()? {
            Some(w) => (true, format!("witness: iterated {} vs {}", w.iterated, w.signature)),
            None => (false, "no witness among two-segment paths".into()),
        })
    });
}

/// Runs one suite for alphabet `d` up to `level`.
pub fn run_suite(suite: Suite, d: u32, level: usize) -> Vec<Check> {
    let mut c = Collector { suite: suite.name(), checks: Vec::new() };
    match suite {
        Suite::Core => core(&mut c, d, level),
        Suite::Dynkin => dynkin(&mut c, d, level),
        Suite::Lambda => lambda(&mut c, d, level),
        Suite::Tortkara => tortkara(&mut c, d, level),
        Suite::Pwl => pwl_suite(&mut c, d, level),
    }
    c.checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            for check in run_suite(s, 2, 3) {
                assert!(check.passed, "{} / {}: {}", check.suite, check.name, check.detail);
            }
        }
    }
}

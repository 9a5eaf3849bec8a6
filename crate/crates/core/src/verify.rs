//! Named verification suites. Each suite checks a family of identities by
//! brute force and reports one pass/fail line per case, with a
//! counterexample dump on failure. Cases fan out over the worker pool but
//! are always reported in case order, so output is deterministic for a
//! fixed seed.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::exactalg::{rat, MultiPoly, ParamSpec, Rational, VarUniverse};
use crate::hecke::{
    amonomial_rhs, left_mul_gen, right_mul_elem, right_mul_gen, sigma, t_lambda, tbar_block,
    Basis, HeckeElement, NormalOrder, SigmaMode,
};
use crate::par;
use crate::ribbonops::{
    self, apply_op, chain_sum, omega_pieri, pieri, pieri_symbolic, refined_op, ClassKind,
    Direction, GrassClassVector, RibbonOpKind, ValueSide,
};
use crate::schurep::{elementary_x, oracle_matrix, SchubertRep};
use crate::shapes::{
    all_permutations, grassmannian_perm, is_vertical_strip, parabolic_elements,
    partitions_in_rectangle, vertical_strip_components, Anchor, GrassSetting, Partition,
    Permutation,
};
use crate::symfunc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    HeckeRelations,
    Amonomial,
    PieriOracle,
    AppendixEquiv,
    Intertwine,
    Specializations,
    Symfunc,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s.to_ascii_lowercase().as_str() {
            "hecke-relations" => Some(Suite::HeckeRelations),
            "amonomial" => Some(Suite::Amonomial),
            "pieri-oracle" => Some(Suite::PieriOracle),
            "appendix-equiv" => Some(Suite::AppendixEquiv),
            "intertwine" => Some(Suite::Intertwine),
            "specializations" => Some(Suite::Specializations),
            "symfunc" => Some(Suite::Symfunc),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::HeckeRelations => "hecke-relations",
            Suite::Amonomial => "amonomial",
            Suite::PieriOracle => "pieri-oracle",
            Suite::AppendixEquiv => "appendix-equiv",
            Suite::Intertwine => "intertwine",
            Suite::Specializations => "specializations",
            Suite::Symfunc => "symfunc",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl CaseResult {
    fn pass(name: impl Into<String>) -> Self {
        CaseResult {
            name: name.into(),
            ok: true,
            detail: String::new(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CaseResult {
            name: name.into(),
            ok: false,
            detail: detail.into(),
        }
    }

    fn from(name: impl Into<String>, outcome: Result<(), String>) -> Self {
        match outcome {
            Ok(()) => Self::pass(name),
            Err(d) => Self::fail(name, d),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.ok)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            if c.ok {
                out.push_str(&format!("PASS {}\n", c.name));
            } else {
                out.push_str(&format!("FAIL {} :: {}\n", c.name, c.detail));
            }
        }
        out.push_str(&format!(
            "{}: {}/{} cases passed\n",
            self.suite,
            self.cases.iter().filter(|c| c.ok).count(),
            self.cases.len()
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "suite": self.suite,
            "passed": self.passed(),
            "cases": self.cases.iter().map(|c| serde_json::json!({
                "name": c.name,
                "ok": c.ok,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub n_max: usize,
    pub seed: u64,
    /// Corrupt one coefficient on purpose; the affected suite must then
    /// fail with a counterexample (a self-test of the harness).
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_max: 6,
            seed: 20240915,
            inject_fault: false,
        }
    }
}

/// The `(k, n)` list used for oracle-level comparisons.
pub fn oracle_settings(n_max: usize) -> Vec<GrassSetting> {
    [(3usize, 1usize), (4, 2), (5, 2), (5, 3), (6, 3)]
        .iter()
        .filter(|&&(n, _)| n <= n_max)
        .map(|&(n, k)| GrassSetting::new(n, k).unwrap())
        .collect()
}

/// All `(k, n)` with `k <= 3` and `n <= min(6, n_max)`.
pub fn exhaustive_settings(n_max: usize) -> Vec<GrassSetting> {
    let mut out = Vec::new();
    for n in 2..=n_max.min(6) {
        for k in 1..n.min(4) {
            out.push(GrassSetting::new(n, k).unwrap());
        }
    }
    out
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let cases = match suite {
        Suite::HeckeRelations => hecke_relations_cases(opts),
        Suite::Amonomial => amonomial_cases(opts),
        Suite::PieriOracle => pieri_oracle_cases(opts),
        Suite::AppendixEquiv => appendix_cases(opts),
        Suite::Intertwine => intertwine_cases(opts),
        Suite::Specializations => specialization_cases(opts),
        Suite::Symfunc => symfunc_cases(opts),
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::HeckeRelations,
                Suite::Amonomial,
                Suite::PieriOracle,
                Suite::AppendixEquiv,
                Suite::Intertwine,
                Suite::Specializations,
                Suite::Symfunc,
            ] {
                all.extend(run_suite(s, opts).cases);
            }
            all
        }
    };
    SuiteReport {
        suite: suite.name().to_string(),
        cases,
    }
}

type Job = (String, Box<dyn Fn() -> Result<(), String> + Send + Sync>);

fn run_jobs(jobs: Vec<Job>) -> Vec<CaseResult> {
    par::run_cases(jobs, |(name, f)| CaseResult::from(name, f()))
}

// ---------------------------------------------------------------------------
// hecke-relations

fn random_element(uni: VarUniverse, rng: &mut StdRng) -> HeckeElement {
    let perms = all_permutations(uni.n);
    let mut h = HeckeElement::zero(uni, Basis::TBar);
    for _ in 0..3 {
        let w = perms[rng.gen_range(0..perms.len())].clone();
        let mut poly = MultiPoly::int(uni, rng.gen_range(-2..=2));
        for _ in 0..2 {
            let var = match rng.gen_range(0..4) {
                0 => VarUniverse::P,
                1 => VarUniverse::Q,
                2 => VarUniverse::H,
                _ => uni.x(rng.gen_range(1..=uni.n)),
            };
            if rng.gen_bool(0.7) {
                poly = poly.add(&MultiPoly::var(uni, var));
            }
        }
        h.add_term(w, poly);
    }
    h
}

fn hecke_relations_cases(opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut jobs: Vec<Job> = Vec::new();
    let seed = opts.seed;
    for n in 2..=opts.n_max.min(4) {
        jobs.push((
            format!("quadratic relation on random elements, rank {n}"),
            Box::new(move || {
                let uni = VarUniverse::new(n);
                let mut rng = StdRng::seed_from_u64(seed ^ (n as u64));
                let p = MultiPoly::var(uni, VarUniverse::P);
                let q = MultiPoly::var(uni, VarUniverse::Q);
                for trial in 0..4 {
                    let h = random_element(uni, &mut rng);
                    for i in 1..n {
                        // (Tbar_i + q)(Tbar_i - p) h = 0
                        let step = left_mul_gen(Basis::TBar, i, &h).sub(&h.scale_poly(&p));
                        let lhs = left_mul_gen(Basis::TBar, i, &step).add(&step.scale_poly(&q));
                        if !lhs.is_zero() {
                            return Err(format!("trial {trial}, generator {i}"));
                        }
                        // (T_i + p)(T_i - q) h = 0 with T_i = Tbar_i - (p-q)
                        let ti = |v: &HeckeElement| {
                            left_mul_gen(Basis::TBar, i, v).sub(&v.scale_poly(&p.sub(&q)))
                        };
                        let step = ti(&h).sub(&h.scale_poly(&q));
                        let lhs = ti(&step).add(&step.scale_poly(&p));
                        if !lhs.is_zero() {
                            return Err(format!("T-form, trial {trial}, generator {i}"));
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("braid relations on random elements, rank {n}"),
            Box::new(move || {
                let uni = VarUniverse::new(n);
                let mut rng = StdRng::seed_from_u64(seed ^ (0x100 + n as u64));
                for trial in 0..4 {
                    let h = random_element(uni, &mut rng);
                    for i in 1..n.saturating_sub(1) {
                        let a = left_mul_gen(
                            Basis::TBar,
                            i,
                            &left_mul_gen(Basis::TBar, i + 1, &left_mul_gen(Basis::TBar, i, &h)),
                        );
                        let b = left_mul_gen(
                            Basis::TBar,
                            i + 1,
                            &left_mul_gen(Basis::TBar, i, &left_mul_gen(Basis::TBar, i + 1, &h)),
                        );
                        if a != b {
                            return Err(format!("trial {trial}, generators {i},{}", i + 1));
                        }
                        for j in i + 2..n {
                            let a = left_mul_gen(Basis::TBar, i, &left_mul_gen(Basis::TBar, j, &h));
                            let b = left_mul_gen(Basis::TBar, j, &left_mul_gen(Basis::TBar, i, &h));
                            if a != b {
                                return Err(format!("commuting pair {i},{j}"));
                            }
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("normal ordering is reduced-word independent, rank {n}"),
            Box::new(move || {
                let uni = VarUniverse::new(n);
                let mut ctx = NormalOrder::new(uni);
                for w in all_permutations(n) {
                    let a = ctx.product_via_word(&w.reduced_word(), &[1, 2.min(n)]);
                    let b = ctx.product_via_word(&w.reduced_word_left(), &[1, 2.min(n)]);
                    if a != b {
                        return Err(format!("w = {w}"));
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("coefficient of the top basis element in Tbar_u T_v, rank {n}"),
            Box::new(move || {
                let uni = VarUniverse::new(n);
                let w0 = Permutation::longest(n);
                for u in all_permutations(n) {
                    for v in all_permutations(n) {
                        let mut prod = HeckeElement::basis_elem(uni, Basis::T, v.clone());
                        for i in u.reduced_word().into_iter().rev() {
                            prod = left_mul_gen(Basis::TBar, i, &prod);
                        }
                        let eps = prod.coefficient(&w0);
                        let expect_one = u.compose(&v) == w0;
                        if expect_one != eps.is_one() || (!expect_one && !eps.is_zero()) {
                            return Err(format!("u={u} v={v} coefficient {eps}"));
                        }
                    }
                }
                Ok(())
            }),
        ));
    }
    // symmetric-coefficient commutation (rank 3 suffices for the pattern;
    // the rewriting engine is the target)
    jobs.push((
        "symmetric polynomials commute through the generators".to_string(),
        Box::new(move || {
            let uni = VarUniverse::new(3);
            let mut ctx = NormalOrder::new(uni);
            for i in 1..=2usize {
                let e1 = MultiPoly::var(uni, uni.x(i)).add(&MultiPoly::var(uni, uni.x(i + 1)));
                let e2 = MultiPoly::var(uni, uni.x(i)).mul(&MultiPoly::var(uni, uni.x(i + 1)));
                for f in [e1.clone(), e2.clone(), e1.mul(&e2)] {
                    let lhs = left_mul_gen(
                        Basis::TBar,
                        i,
                        &ctx.right_mul_poly(&HeckeElement::one(uni, Basis::TBar), &f),
                    );
                    let si = Permutation::identity(3).mul_right_s(i).0;
                    let rhs = HeckeElement::basis_elem(uni, Basis::TBar, si).scale_poly(&f);
                    if lhs != rhs {
                        return Err(format!("i={i} f={f}"));
                    }
                }
            }
            Ok(())
        }),
    ));
    run_jobs(jobs)
}

// ---------------------------------------------------------------------------
// amonomial

fn random_prime_params(uni: VarUniverse, rng: &mut StdRng) -> ParamSpec {
    let primes = [2i64, 3, 5, 7, 11, 13];
    loop {
        let p = primes[rng.gen_range(0..primes.len())];
        let q = primes[rng.gen_range(0..primes.len())];
        if p != q {
            return ParamSpec::new()
                .set_rat(uni, VarUniverse::P, rat(p))
                .set_rat(uni, VarUniverse::Q, rat(q));
        }
    }
}

fn subsets_of(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for r in 0..=k {
        out.extend(ribbonops::index_subsets(k, r));
    }
    out
}

fn amonomial_cases(opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut jobs: Vec<Job> = Vec::new();
    let seed = opts.seed;
    for s in oracle_settings(opts.n_max) {
        for spec_idx in 0..3u64 {
            jobs.push((
                format!(
                    "monomial chains and elementary sums match normal ordering, n={} k={} spec {}",
                    s.n, s.k, spec_idx
                ),
                Box::new(move || {
                    let uni = VarUniverse::new(s.n);
                    let mut rng = StdRng::seed_from_u64(seed ^ (s.n as u64) << 8 ^ spec_idx);
                    let ps = random_prime_params(uni, &mut rng);
                    ps.check_nondegenerate(s.k, s.n).map_err(|e| e.to_string())?;
                    let mode = SigmaMode::Specialized(ps.clone());
                    let sig = sigma(uni, s, &mode).map_err(|e| e.to_string())?;
                    let mut ctx = NormalOrder::new(uni);
                    for mu in partitions_in_rectangle(s) {
                        let w_mu = grassmannian_perm(s, &mu);
                        for index_set in subsets_of(s.k) {
                            let mut lhs =
                                HeckeElement::basis_elem(uni, Basis::TBar, w_mu.clone());
                            for &i in &index_set {
                                lhs = ctx.right_mul_x(&lhs, i);
                            }
                            let lhs = right_mul_elem(&lhs.specialize(&ps), &sig);
                            let rhs = amonomial_rhs(uni, s, &mu, &index_set, &mode)
                                .map_err(|e| e.to_string())?
                                .specialize(&ps);
                            if lhs != rhs {
                                return Err(format!(
                                    "mu={mu} I={index_set:?} params p,q={:?}",
                                    (ps.get(VarUniverse::P).unwrap().to_string(),
                                     ps.get(VarUniverse::Q).unwrap().to_string())
                                ));
                            }
                        }
                        // elementary sums: Tbar_mu e_r = sum over index sets
                        for r in 0..=s.k {
                            let t_mu = t_lambda(uni, s, &mu, &mode).map_err(|e| e.to_string())?;
                            let e_r = elementary_x(uni, s.k, r);
                            let lhs = ctx.right_mul_poly(&t_mu, &e_r).specialize(&ps);
                            let mut rhs = HeckeElement::zero(uni, Basis::TBar);
                            for index_set in ribbonops::index_subsets(s.k, r) {
                                rhs.add_assign(
                                    &amonomial_rhs(uni, s, &mu, &index_set, &mode)
                                        .map_err(|e| e.to_string())?,
                                );
                            }
                            if lhs != rhs.specialize(&ps) {
                                return Err(format!("elementary case mu={mu} r={r}"));
                            }
                        }
                    }
                    Ok(())
                }),
            ));
        }
    }
    // telescoping identity for multiplying one x through a block, cleared
    // denominators, fully symbolic
    for s in exhaustive_settings(opts.n_max) {
        jobs.push((
            format!("block telescoping identity, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let k = s.k;
                let mut ctx = NormalOrder::new(uni);
                let sig = sigma(uni, s, &SigmaMode::Cleared).map_err(|e| e.to_string())?;
                for j in 0..=(s.n - k) {
                    let block = tbar_block(uni, k, j);
                    let lhs = right_mul_elem(&ctx.right_mul_x(&block, k), &sig);
                    // x_{k+j} block Sigma + sum_{a+b=j-1} (h-(p-q)x_{k+j}) q^b block_a Sigma
                    let x_kj = MultiPoly::var(uni, uni.x(k + j));
                    let mut rhs = right_mul_elem(&block, &sig).scale_poly(&x_kj);
                    let q = MultiPoly::var(uni, VarUniverse::Q);
                    let hh = MultiPoly::var(uni, VarUniverse::H).sub(
                        &MultiPoly::var(uni, VarUniverse::P)
                            .sub(&q)
                            .mul_var(uni.x(k + j)),
                    );
                    for a in 0..j {
                        let b = (j - 1 - a) as u32;
                        let part = right_mul_elem(&tbar_block(uni, k, a), &sig)
                            .scale_poly(&hh.mul(&q.pow(b)));
                        rhs.add_assign(&part);
                    }
                    if lhs != rhs {
                        return Err(format!("j={j}"));
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("ribbon deletion block identity, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let k = s.k;
                let sig = sigma(uni, s, &SigmaMode::Cleared).map_err(|e| e.to_string())?;
                let p = MultiPoly::var(uni, VarUniverse::P);
                for lam in partitions_in_rectangle(s) {
                    for i in 1..=k {
                        for a_i in 0..lam.part(i) {
                            // blocks of the column word with row i clipped to a_i
                            let mut h = HeckeElement::one(uni, Basis::TBar);
                            for b in 1..=k {
                                let row = k + 1 - b;
                                let j = if row == i {
                                    a_i as usize
                                } else {
                                    lam.part(row) as usize
                                };
                                h = right_mul_elem(&h, &tbar_block(uni, b, j));
                            }
                            let lhs = right_mul_elem(&h, &sig);
                            // expected: p^{ht-1} Tbar_ν for the ribbon with
                            // head in row i and width λ_i - a_i
                            let ribbons: Vec<_> =
                                crate::shapes::ribbons_deleted(s, &lam, i, Anchor::Head)
                                    .into_iter()
                                    .filter(|rb| rb.wd == lam.part(i) - a_i)
                                    .collect();
                            if ribbons.len() != 1 {
                                return Err(format!(
                                    "expected a unique ribbon, lam={lam} i={i} a={a_i}"
                                ));
                            }
                            let rb = &ribbons[0];
                            let t_nu = t_lambda(uni, s, &rb.inner, &SigmaMode::Cleared)
                                .map_err(|e| e.to_string())?;
                            let rhs = t_nu.scale_poly(&p.pow(rb.ht - 1));
                            if lhs != rhs {
                                return Err(format!("lam={lam} i={i} a={a_i}"));
                            }
                        }
                    }
                }
                Ok(())
            }),
        ));
    }
    // block swap identity (pure braid consequence)
    jobs.push((
        "block swap identity for nested blocks".to_string(),
        Box::new(move || {
            let n = 6usize;
            let uni = VarUniverse::new(n);
            for i in 2..=4usize {
                for a in 0..=(n - i) {
                    for b in 0..a.min(n + 1 - i) {
                        if i + b > n || i - 1 + a > n {
                            continue;
                        }
                        let lhs = right_mul_elem(&tbar_block(uni, i - 1, a), &tbar_block(uni, i, b));
                        let rhs =
                            right_mul_elem(&tbar_block(uni, i - 1, b), &tbar_block(uni, i - 1, a));
                        if lhs != rhs {
                            return Err(format!("i={i} a={a} b={b}"));
                        }
                    }
                }
            }
            Ok(())
        }),
    ));
    run_jobs(jobs)
}

// ---------------------------------------------------------------------------
// pieri-oracle

fn pieri_oracle_cases(opts: &VerifyOptions) -> Vec<CaseResult> {
    let inject = opts.inject_fault;
    let mut jobs: Vec<Job> = Vec::new();
    for (si, s) in oracle_settings(opts.n_max).into_iter().enumerate() {
        let first = si == 0;
        jobs.push((
            format!("ribbon chains match the oracle for all families, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let rep = Arc::new(SchubertRep::new(s.n));
                let parts = partitions_in_rectangle(s);
                for r in 0..=s.k {
                    let matrix = oracle_matrix(&rep, s, r).map_err(|e| e.to_string())?;
                    for kind in ClassKind::ALL {
                        let ps = kind.param_spec(uni);
                        for lam in &parts {
                            let mut got =
                                pieri(s, kind, lam, r).map_err(|e| e.to_string())?;
                            if inject && first && r == 1 && kind == ClassKind::MotivicChern {
                                // deliberate corruption for the harness
                                // negative control
                                got = got.scale(&MultiPoly::int(uni, 2));
                            }
                            let mut expected = GrassClassVector::zero(uni);
                            match kind.value_side() {
                                ValueSide::Head => {
                                    for mu in &parts {
                                        if let Some(c) = matrix.get(&(lam.clone(), mu.clone())) {
                                            expected.add_term(mu.clone(), c.specialize(&ps));
                                        }
                                    }
                                }
                                ValueSide::Tail => {
                                    // dual family: transpose of the twisted
                                    // dual-partition matrix
                                    for mu in &parts {
                                        if let Some(c) = matrix
                                            .get(&(mu.dual(s), lam.dual(s)))
                                        {
                                            let twisted = twist_t(uni, s, &c.specialize(&ps));
                                            expected.add_term(mu.clone(), twisted);
                                        }
                                    }
                                }
                            }
                            if got != expected {
                                return Err(format!(
                                    "kind={} lam={lam} r={r}: got {:?}, expected {:?}",
                                    kind.name(),
                                    got.render_text(kind.symbol()),
                                    expected.render_text(kind.symbol())
                                ));
                            }
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("duality and reconstruction, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let rep = SchubertRep::new(s.n);
                let mut rng = StdRng::seed_from_u64(0xD1A7 ^ (s.n as u64) << 4 ^ s.k as u64);
                let mut ps = random_prime_params(uni, &mut rng)
                    .set_rat(uni, VarUniverse::H, rat(rng.gen_range(2..=9)));
                for i in 1..=s.n {
                    ps = ps.set_rat(
                        uni,
                        uni.t(i),
                        crate::exactalg::rat_frac(rng.gen_range(1..=19), 23),
                    );
                }
                ps.check_nondegenerate(s.k, s.n).map_err(|e| e.to_string())?;
                let mode = SigmaMode::Specialized(ps.clone());
                let parts = partitions_in_rectangle(s);
                let functionals: Vec<_> = parts
                    .iter()
                    .map(|mu| {
                        t_lambda(uni, s, mu, &mode).map(|t| rep.functional_for(&t))
                    })
                    .collect::<Result<_, _>>()
                    .map_err(|e| e.to_string())?;
                let classes: Vec<_> = parts
                    .iter()
                    .map(|nu| rep.grass_class(s, nu).specialize(&ps))
                    .collect();
                for (mi, mu) in parts.iter().enumerate() {
                    for (ni, nu) in parts.iter().enumerate() {
                        let got = rep.apply_functional(&functionals[mi], &classes[ni]);
                        let ok = if mi == ni { got.is_one() } else { got.is_zero() };
                        if !ok {
                            return Err(format!("mu={mu} nu={nu} pairing {got}"));
                        }
                    }
                }
                // reconstruction of a random combination
                let mut v = rep.zero();
                let mut coeffs = Vec::new();
                for (ni, _) in parts.iter().enumerate() {
                    let c = rat(rng.gen_range(-5..=5));
                    coeffs.push(c.clone());
                    v.add_assign(&classes[ni].scale(&MultiPoly::constant(uni, c)));
                }
                for (mi, mu) in parts.iter().enumerate() {
                    let got = rep.apply_functional(&functionals[mi], &v);
                    if got != MultiPoly::constant(uni, coeffs[mi].clone()) {
                        return Err(format!("reconstruction at {mu}"));
                    }
                }
                Ok(())
            }),
        ));
    }
    run_jobs(jobs)
}

fn twist_t(uni: VarUniverse, s: GrassSetting, f: &MultiPoly) -> MultiPoly {
    let t1 = uni.t(1);
    let tn = uni.t(s.n);
    f.map_vars(|v| {
        if v >= t1 && v <= tn {
            t1 + (tn - t1) - (v - t1)
        } else {
            v
        }
    })
}

// ---------------------------------------------------------------------------
// appendix-equiv

fn appendix_cases(opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut jobs: Vec<Job> = Vec::new();
    for s in exhaustive_settings(opts.n_max) {
        jobs.push((
            format!("summed chains agree across the four operator types, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                for lam in partitions_in_rectangle(s) {
                    let v = GrassClassVector::single(uni, lam.clone());
                    for r in 0..=s.k {
                        let fhead = chain_sum(s, RibbonOpKind::adding(Anchor::Head, ValueSide::Head), &v, r);
                        let xftail = chain_sum(s, RibbonOpKind::adding(Anchor::Tail, ValueSide::Head), &v, r);
                        if fhead != xftail {
                            return Err(format!("adding head-valued, lam={lam} r={r}"));
                        }
                        let xfhead = chain_sum(s, RibbonOpKind::adding(Anchor::Head, ValueSide::Tail), &v, r);
                        let ftail = chain_sum(s, RibbonOpKind::adding(Anchor::Tail, ValueSide::Tail), &v, r);
                        if xfhead != ftail {
                            return Err(format!("adding tail-valued, lam={lam} r={r}"));
                        }
                        let d_fhead = chain_sum(s, RibbonOpKind::deleting(Anchor::Head, ValueSide::Head), &v, r);
                        let d_xftail = chain_sum(s, RibbonOpKind::deleting(Anchor::Tail, ValueSide::Head), &v, r);
                        if d_fhead != d_xftail {
                            return Err(format!("deleting head-valued, mu={lam} r={r}"));
                        }
                        let d_xfhead = chain_sum(s, RibbonOpKind::deleting(Anchor::Head, ValueSide::Tail), &v, r);
                        let d_ftail = chain_sum(s, RibbonOpKind::deleting(Anchor::Tail, ValueSide::Tail), &v, r);
                        if d_xfhead != d_ftail {
                            return Err(format!("deleting tail-valued, mu={lam} r={r}"));
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("refined-operator composites: swaps and distinctness, n={} k={}", s.n, s.k),
            Box::new(move || refined_composite_checks(s)),
        ));
    }
    run_jobs(jobs)
}

/// The two commutation claims, the two distinctness claims, and the
/// sorting bijection for refined-operator composites, by exhaustive search.
fn refined_composite_checks(s: GrassSetting) -> Result<(), String> {
    let uni = VarUniverse::new(s.n);
    let labels = 1..=(s.n as u32);
    let pairs: Vec<(u32, u32)> = labels
        .clone()
        .flat_map(|b| (1..=b).map(move |a| (a, b)))
        .collect();
    for lam in partitions_in_rectangle(s) {
        let v = GrassClassVector::single(uni, lam.clone());
        // pairwise claims
        for &(a, b) in &pairs {
            let first = refined_op(s, a, b, &v).map_err(|e| e.to_string())?;
            if first.is_zero() {
                continue;
            }
            for &(a2, b2) in &pairs {
                let second = refined_op(s, a2, b2, &first).map_err(|e| e.to_string())?;
                if second.is_zero() {
                    continue;
                }
                if b2 < b {
                    if a2 == a {
                        return Err(format!(
                            "second label pair ({a2},{b2}) repeats a={a} after ({a},{b}) on {lam}"
                        ));
                    }
                    if a < a2 {
                        let other = refined_op(
                            s,
                            a,
                            b,
                            &refined_op(s, a2, b2, &v).map_err(|e| e.to_string())?,
                        )
                        .map_err(|e| e.to_string())?;
                        if other != second {
                            return Err(format!(
                                "swap failed for ({a},{b}),({a2},{b2}) on {lam}"
                            ));
                        }
                    }
                }
                if a2 < a {
                    if b2 == b {
                        return Err(format!(
                            "second label pair ({a2},{b2}) repeats b={b} after ({a},{b}) on {lam}"
                        ));
                    }
                    if b < b2 {
                        let other = refined_op(
                            s,
                            a,
                            b,
                            &refined_op(s, a2, b2, &v).map_err(|e| e.to_string())?,
                        )
                        .map_err(|e| e.to_string())?;
                        if other != second {
                            return Err(format!(
                                "dual swap failed for ({a},{b}),({a2},{b2}) on {lam}"
                            ));
                        }
                    }
                }
            }
        }
        // composite sequences with strictly decreasing b (application order)
        for r in 1..=s.k.min(3) {
            let b_sets = descending_subsets(s.n as u32, r);
            for bs in &b_sets {
                let mut a_choices: Vec<Vec<u32>> = vec![vec![]];
                for &b in bs {
                    let mut next = Vec::new();
                    for prefix in &a_choices {
                        for a in 1..=b {
                            let mut p = prefix.clone();
                            p.push(a);
                            next.push(p);
                        }
                    }
                    a_choices = next;
                }
                for a_seq in &a_choices {
                    let seq: Vec<(u32, u32)> =
                        a_seq.iter().zip(bs).map(|(&a, &b)| (a, b)).collect();
                    let mut cur = v.clone();
                    for &(a, b) in &seq {
                        cur = refined_op(s, a, b, &cur).map_err(|e| e.to_string())?;
                        if cur.is_zero() {
                            break;
                        }
                    }
                    if cur.is_zero() {
                        continue;
                    }
                    // distinct a-values
                    let mut sorted_a = a_seq.clone();
                    sorted_a.sort_unstable();
                    sorted_a.dedup();
                    if sorted_a.len() != a_seq.len() {
                        return Err(format!(
                            "nonzero composite {seq:?} on {lam} has repeated tail labels"
                        ));
                    }
                    // the sorting bijection preserves the value
                    let mut order = seq.clone();
                    loop {
                        let mut swapped = false;
                        for j in 0..order.len().saturating_sub(1) {
                            if order[j].0 < order[j + 1].0 {
                                order.swap(j, j + 1);
                                swapped = true;
                            }
                        }
                        if !swapped {
                            break;
                        }
                    }
                    let mut resorted = v.clone();
                    for &(a, b) in &order {
                        resorted = refined_op(s, a, b, &resorted).map_err(|e| e.to_string())?;
                    }
                    if resorted != cur {
                        return Err(format!(
                            "sorting {seq:?} to {order:?} changed the value on {lam}"
                        ));
                    }
                    // b-values of the sorted composite are distinct by
                    // construction here; check the dual distinctness claim on
                    // the sorted sequence's own terms
                    let mut bs_sorted: Vec<u32> = order.iter().map(|&(_, b)| b).collect();
                    bs_sorted.sort_unstable();
                    bs_sorted.dedup();
                    if bs_sorted.len() != order.len() {
                        return Err(format!("sorted composite {order:?} repeats head labels"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn descending_subsets(n: u32, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, lo: u32, n: u32, r: usize) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        // choose next (smaller) value
        let hi = cur.last().map(|&b| b - 1).unwrap_or(n);
        for b in (lo..=hi).rev() {
            cur.push(b);
            rec(out, cur, lo, n, r);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 1, n, r);
    out
}

// ---------------------------------------------------------------------------
// intertwine

fn intertwine_cases(opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut jobs: Vec<Job> = Vec::new();
    for n in 2..=opts.n_max.min(7) {
        for k in 1..n {
            let s = GrassSetting::new(n, k).unwrap();
            jobs.push((
                format!("per-ribbon determinant-factor identity, n={n} k={k}"),
                Box::new(move || {
                    if ribbonops::intertwining_holds(s) {
                        Ok(())
                    } else {
                        Err("a ribbon violates the determinant-factor identity".into())
                    }
                }),
            ));
        }
    }
    for s in exhaustive_settings(opts.n_max) {
        jobs.push((
            format!("determinant factor intertwines the summed chains, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let mc = ClassKind::MotivicChern.param_spec(uni);
                for lam in partitions_in_rectangle(s) {
                    for r in 0..=s.k {
                        let v = GrassClassVector::single(uni, lam.clone());
                        let tail = chain_sum(
                            s,
                            RibbonOpKind::adding(Anchor::Tail, ValueSide::Tail),
                            &v,
                            r,
                        )
                        .specialize(&mc);
                        let mut lhs = GrassClassVector::zero(uni);
                        for (nu, c) in &tail.terms {
                            lhs.add_term(nu.clone(), c.mul(&ribbonops::d_factor(s, uni, nu)));
                        }
                        let rhs = chain_sum(
                            s,
                            RibbonOpKind::adding(Anchor::Head, ValueSide::Head),
                            &v.scale(&ribbonops::d_factor(s, uni, &lam)),
                            r,
                        )
                        .specialize(&mc);
                        if lhs != rhs {
                            return Err(format!("lam={lam} r={r}"));
                        }
                    }
                }
                Ok(())
            }),
        ));
    }
    run_jobs(jobs)
}

// ---------------------------------------------------------------------------
// specializations

fn specialization_cases(opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut jobs: Vec<Job> = Vec::new();
    for s in oracle_settings(opts.n_max) {
        jobs.push((
            format!("y=0 collapses the motivic families, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let y0 = ParamSpec::new().set_rat(uni, VarUniverse::Y, Rational::from_integer(0.into()));
                for lam in partitions_in_rectangle(s) {
                    for r in 0..=s.k {
                        let mc = pieri(s, ClassKind::MotivicChern, &lam, r).map_err(|e| e.to_string())?;
                        let ideal = pieri(s, ClassKind::IdealSheaf, &lam, r).map_err(|e| e.to_string())?;
                        if mc.specialize(&y0) != ideal {
                            return Err(format!("ideal-sheaf collapse, lam={lam} r={r}"));
                        }
                        let smc = pieri(s, ClassKind::SegreMotivic, &lam, r).map_err(|e| e.to_string())?;
                        let o = pieri(s, ClassKind::StructureSheaf, &lam, r).map_err(|e| e.to_string())?;
                        if smc.specialize(&y0) != o {
                            return Err(format!("structure-sheaf collapse, lam={lam} r={r}"));
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("vertical-strip rule at t=0, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let t0 = ParamSpec::zero_t(uni);
                for lam in partitions_in_rectangle(s) {
                    for r in 0..=s.k {
                        let exp = pieri(s, ClassKind::Schubert, &lam, r)
                            .map_err(|e| e.to_string())?
                            .specialize(&t0);
                        for mu in partitions_in_rectangle(s) {
                            let c = exp.coefficient(&mu);
                            let strip = is_vertical_strip(&lam, &mu)
                                && mu.size() - lam.size() == r as u32;
                            if strip && !c.is_one() {
                                return Err(format!("lam={lam} mu={mu} r={r}: coeff {c}"));
                            }
                            if !strip && !c.is_zero() {
                                return Err(format!("lam={lam} mu={mu} r={r}: spurious {c}"));
                            }
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("structure-sheaf rule at t=0, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let t0 = ParamSpec::zero_t(uni);
                for lam in partitions_in_rectangle(s) {
                    for r in 0..=s.k {
                        let exp = pieri(s, ClassKind::StructureSheaf, &lam, r)
                            .map_err(|e| e.to_string())?
                            .specialize(&t0);
                        for mu in partitions_in_rectangle(s) {
                            let c = exp.coefficient(&mu);
                            let boxes = mu.size() - lam.size();
                            let expected = match vertical_strip_components(&lam, &mu) {
                                Some(comps) if comps <= r && r as u32 <= boxes => {
                                    // chains of r connected strips, counted
                                    // independently, match C(|skew|-c, r-c)
                                    let chains = ribbonops::vertical_strip_chains(s, &lam, &mu, r);
                                    let closed = binom_u64(
                                        (boxes as usize - comps) as u64,
                                        (r - comps) as u64,
                                    );
                                    if chains != closed {
                                        return Err(format!(
                                            "chain count {chains} vs closed form {closed}, lam={lam} mu={mu} r={r}"
                                        ));
                                    }
                                    MultiPoly::int(uni, chains as i64)
                                }
                                _ => MultiPoly::zero(uni),
                            };
                            if c != expected {
                                return Err(format!(
                                    "lam={lam} mu={mu} r={r}: coeff {c}, expected {expected}"
                                ));
                            }
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("opposite cells: direct vs twisted, n={} k={}", s.n, s.k),
            Box::new(move || {
                for mu in partitions_in_rectangle(s) {
                    for r in 0..=s.k {
                        let (direct, twisted) =
                            ribbonops::pieri_opposite_cells(s, &mu, r).map_err(|e| e.to_string())?;
                        if direct != twisted {
                            return Err(format!("mu={mu} r={r}"));
                        }
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("transposed matrices for the dual family, n={} k={}", s.n, s.k),
            Box::new(move || {
                let uni = VarUniverse::new(s.n);
                let mc = ClassKind::MotivicChern.param_spec(uni);
                for r in 0..=s.k {
                    for lam in partitions_in_rectangle(s) {
                        let smc_exp =
                            pieri(s, ClassKind::SegreMotivic, &lam, r).map_err(|e| e.to_string())?;
                        for mu in partitions_in_rectangle(s) {
                            // coeff of S_mu in c_r S_lam = coeff of M(X)_lam
                            // in c_r M(X)_mu
                            let (direct, _) = ribbonops::pieri_opposite_cells(s, &mu, r)
                                .map_err(|e| e.to_string())?;
                            let rhs = direct.specialize(&mc).coefficient(&lam);
                            if smc_exp.coefficient(&mu) != rhs {
                                return Err(format!("lam={lam} mu={mu} r={r}"));
                            }
                        }
                    }
                }
                Ok(())
            }),
        ));
    }
    // CSM-style coincidence of value sides at p = q
    jobs.push((
        "head- and tail-valued chains coincide when p = q".to_string(),
        Box::new(move || {
            let s = GrassSetting::new(5, 2).unwrap();
            let uni = VarUniverse::new(5);
            let csm = ClassKind::Csm.param_spec(uni);
            for lam in partitions_in_rectangle(s) {
                for r in 0..=s.k {
                    let head = pieri_symbolic(s, ValueSide::Head, &lam, r).specialize(&csm);
                    let tail = pieri_symbolic(s, ValueSide::Tail, &lam, r).specialize(&csm);
                    if head != tail {
                        return Err(format!("lam={lam} r={r}"));
                    }
                }
            }
            Ok(())
        }),
    ));
    run_jobs(jobs)
}

fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut out = 1u64;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

// ---------------------------------------------------------------------------
// symfunc

fn symfunc_cases(opts: &VerifyOptions) -> Vec<CaseResult> {
    let mut jobs: Vec<Job> = Vec::new();
    jobs.push((
        "rank-one ledger".to_string(),
        Box::new(|| {
            for (name, ok) in symfunc::gr12_ledger() {
                if !ok {
                    return Err(format!("ledger entry failed: {name}"));
                }
            }
            Ok(())
        }),
    ));
    let te_settings: Vec<(usize, usize)> = [(2, 1), (3, 1), (4, 2)]
        .iter()
        .filter(|&&(n, _)| n <= opts.n_max)
        .copied()
        .collect();
    for (n, k) in te_settings {
        jobs.push((
            format!("dualizing-sheaf representatives, n={n} k={k}"),
            Box::new(move || {
                let s = GrassSetting::new(n, k).unwrap();
                for lam in partitions_in_rectangle(s) {
                    let trimmed: Vec<u32> =
                        lam.0.iter().copied().filter(|&p| p > 0).collect();
                    let r = symfunc::theorem_e_check(s, &trimmed).map_err(|e| e.to_string())?;
                    if !r.ok {
                        return Err(format!("lambda {:?}: {}", r.lambda, r.witness));
                    }
                }
                // out-of-rectangle shapes: too wide and too tall
                let wide = vec![s.cols() as u32 + 1];
                let tall = vec![1u32; s.k + 1];
                for shape in [wide, tall] {
                    let r = symfunc::theorem_e_check(s, &shape).map_err(|e| e.to_string())?;
                    if r.in_rectangle {
                        return Err(format!("{shape:?} wrongly classified as in-rectangle"));
                    }
                    if !r.ok {
                        return Err(format!("lambda {:?}: {}", r.lambda, r.witness));
                    }
                }
                Ok(())
            }),
        ));
        jobs.push((
            format!("dualizing-sheaf route agreement, n={n} k={k}"),
            Box::new(move || {
                let s = GrassSetting::new(n, k).unwrap();
                if symfunc::det_identity_check(s).map_err(|e| e.to_string())? {
                    Ok(())
                } else {
                    Err("route disagreement".into())
                }
            }),
        ));
    }
    jobs.push((
        "tableau generating functions".to_string(),
        Box::new(|| {
            for shape in [vec![1], vec![2], vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
                let a = symfunc::j_sym(&shape, 5);
                let b = symfunc::j_sym_direct(&shape, 5);
                if a.terms != b.terms {
                    return Err(format!("the two J constructions differ on {shape:?}"));
                }
                let f = symfunc::ktilde_sym(&shape, 5);
                if f.omega().omega().terms != f.terms {
                    return Err(format!("omega is not an involution on K~ of {shape:?}"));
                }
            }
            Ok(())
        }),
    ));
    jobs.push((
        "column expansion of h times the unsigned tableau function".to_string(),
        Box::new(|| {
            // exercised in depth by the unit tests; run one larger case here
            let d_cap = 7;
            let shape = vec![2, 1];
            let lhs = symfunc::h_sym(2, d_cap).mul(&symfunc::ktilde_sym(&shape, d_cap));
            let lam_conj = crate::shapes::conjugate_parts(&shape);
            let mut rhs = symfunc::SymFunc::zero(d_cap);
            for d in 0..=d_cap {
                for mu in symfunc::partitions_of(d) {
                    let contains = shape.len() <= mu.len()
                        && shape.iter().enumerate().all(|(i, &p)| mu[i] >= p);
                    if !contains || mu == shape {
                        continue;
                    }
                    let mu_conj = crate::shapes::conjugate_parts(&mu);
                    let cols = (0..mu_conj.len())
                        .filter(|&j| mu_conj[j] > lam_conj.get(j).copied().unwrap_or(0))
                        .count();
                    if cols != 2 {
                        continue;
                    }
                    let boxes: u32 = mu.iter().sum::<u32>() - 3;
                    let sign = if (boxes - 2) % 2 == 0 {
                        Rational::from_integer(1.into())
                    } else {
                        Rational::from_integer((-1).into())
                    };
                    rhs = rhs.add(&symfunc::ktilde_sym(&mu, d_cap).scale(&sign));
                }
            }
            if lhs.terms != rhs.terms {
                return Err("expansion mismatch for shape [2,1], r=2".into());
            }
            Ok(())
        }),
    ));
    run_jobs(jobs)
}

// small helpers reused by the CLI
pub use crate::ribbonops::index_subsets as subsets_for_pieri;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            n_max: 4,
            seed: 7,
            inject_fault: false,
        };
        for suite in [
            Suite::HeckeRelations,
            Suite::Amonomial,
            Suite::PieriOracle,
            Suite::AppendixEquiv,
            Suite::Intertwine,
            Suite::Specializations,
        ] {
            let report = run_suite(suite, &opts);
            assert!(
                report.passed(),
                "suite {} failed:\n{}",
                report.suite,
                report.render_text()
            );
        }
    }

    #[test]
    fn symfunc_suite_passes_small() {
        let opts = VerifyOptions {
            n_max: 3,
            seed: 7,
            inject_fault: false,
        };
        let report = run_suite(Suite::Symfunc, &opts);
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn fault_injection_is_caught() {
        let opts = VerifyOptions {
            n_max: 3,
            seed: 7,
            inject_fault: true,
        };
        let report = run_suite(Suite::PieriOracle, &opts);
        assert!(!report.passed());
        let failing: Vec<_> = report.cases.iter().filter(|c| !c.ok).collect();
        assert!(!failing.is_empty());
        assert!(failing[0].detail.contains("lam="), "counterexample missing");
    }
}

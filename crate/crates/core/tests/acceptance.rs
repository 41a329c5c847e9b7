//! Acceptance criteria, one line each. Exits nonzero on any unexpected
//! result; criteria known to be unattainable print FAIL with the reason and
//! are expected to stay that way.

use std::time::{Duration, Instant};

use bruhat_polytopes::checks::{run_checks, CheckConfig, CheckReport, Suite};
use bruhat_polytopes::interval::BruhatInterval;
use bruhat_polytopes::oracle::{LinearProgram, LpOutcome, Relation};
use bruhat_polytopes::perm::{Permutation, Transposition};
use bruhat_polytopes::polytope::{
    bip_inequalities, block_partition, dimension, face_graph, is_face, rank_sum_system, MatroidConvention,
};
use bruhat_polytopes::rpoly::{
    counterexample_report, extend_to_special_matching, generalized_r_identity, recurrence_counterexample_check,
    Contradiction, Extension, IntPolynomial,
};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn t(i: usize, k: usize) -> Transposition {
    Transposition::new(i, k).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

struct Runner {
    unexpected: usize,
}

impl Runner {
    /// `known_failure` carries the reason a criterion cannot be met as written.
    fn criterion(&mut self, id: &str, name: &str, limit: Duration, known_failure: Option<&str>, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit;
        let ok = out.ok && in_time;
        let verdict = if ok { "PASS" } else { "FAIL" };
        let mut line = format!("{verdict} {id:<4} {name} ({:.2} s, limit {} s)", elapsed.as_secs_f64(), limit.as_secs());
        if !out.detail.is_empty() {
            line.push_str(&format!(": {}", out.detail));
        }
        if !in_time {
            line.push_str(" [over time limit]");
        }
        match known_failure {
            Some(reason) if !ok => line.push_str(&format!(" [known: {reason}]")),
            Some(_) => {
                line.push_str(" [expected to fail; investigate]");
                self.unexpected += 1;
            }
            None if !ok => self.unexpected += 1,
            None => {}
        }
        println!("{line}");
    }

    fn report(&self, id: &str, name: &str, detail: &str) {
        println!("INFO {id:<4} {name}: {detail}");
    }
}

fn poly(desc: &[i64]) -> IntPolynomial {
    IntPolynomial::new(desc.iter().rev().copied().collect())
}

/// `(subset, rhs)` rows of the displayed system for `Q_{1324,2431}`, with `Σx = 10`.
const DISPLAYED: [(&[usize], i64); 14] = [
    (&[1, 2, 3], 6),
    (&[1, 2, 4], 6),
    (&[1, 3, 4], 6),
    (&[2, 3, 4], 6),
    (&[1, 2], 4),
    (&[1, 3], 5),
    (&[1, 4], 5),
    (&[2, 3], 5),
    (&[2, 4], 5),
    (&[3, 4], 3),
    (&[1], 3),
    (&[2], 3),
    (&[3], 2),
    (&[4], 2),
];

fn displayed_is_feasible() -> bool {
    let mut lp = LinearProgram::new(4);
    lp.constraint(&[1; 4], Relation::Eq, 10);
    for (a, rhs) in DISPLAYED {
        let mut row = vec![0; 4];
        for &i in a {
            row[i - 1] = 1;
        }
        lp.constraint(&row, Relation::Le, rhs);
    }
    lp.maximize(&[0; 4]);
    !matches!(lp.solve(), LpOutcome::Infeasible)
}

fn all_pass(report: &CheckReport, names: &[(Suite, &str)]) -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for &(suite, name) in names {
        let prop = report.suite(suite).and_then(|s| s.property(name)).expect("property exists");
        ok &= prop.passed() && prop.checked > 0;
        parts.push(format!("{name} {}/{}", prop.held, prop.checked));
        if let Some(f) = &prop.first_failure {
            parts.push(format!("first failure {f}"));
        }
    }
    outcome(ok, parts.join(", "))
}

fn main() {
    let mut r = Runner { unexpected: 0 };
    let sec = Duration::from_secs(1);

    r.criterion("1a", "dimension and partition examples", sec, None, || {
        let a = dimension(&p("1234"), &p("1432")).unwrap() == 2
            && block_partition(&p("1234"), &p("1432")).unwrap().to_string() == "|1|234|";
        let b = dimension(&p("1234"), &p("3412")).unwrap() == 3
            && block_partition(&p("1234"), &p("3412")).unwrap().to_string() == "|1234|";
        outcome(a && b, "")
    });

    r.criterion(
        "1b",
        "bip_inequalities(1324,2431) equals the displayed system verbatim",
        sec,
        Some("the displayed system is infeasible (its |A|=3 rows force Σx ≤ 8 < 10); see 1b'"),
        || {
            let d = bip_inequalities(&BruhatInterval::new(p("1324"), p("2431")).unwrap()).unwrap();
            let verbatim = d.equalities.len() == 1
                && d.equalities[0].rhs == 10
                && DISPLAYED.iter().all(|(a, rhs)| d.inequality_for(a).map(|i| i.rhs) == Some(*rhs));
            let detail = format!(
                "displayed system feasible: {}; computed x1+x2 ≤ {}, x3+x4 ≤ {}, x3 ≤ {}",
                displayed_is_feasible(),
                d.inequality_for(&[1, 2]).unwrap().rhs,
                d.inequality_for(&[3, 4]).unwrap().rhs,
                d.inequality_for(&[3]).unwrap().rhs
            );
            outcome(verbatim, detail)
        },
    );

    r.criterion("1b'", "displayed right-hand sides are the first-values rank sums", sec, None, || {
        let raw = rank_sum_system(&BruhatInterval::new(p("1324"), p("2431")).unwrap(), MatroidConvention::FirstValues)
            .unwrap();
        let matched = DISPLAYED.iter().filter(|(a, rhs)| raw.inequality_for(a).map(|i| i.rhs) == Some(*rhs)).count();
        let exact_for_q = bip_inequalities(&BruhatInterval::new(p("1324"), p("2431")).unwrap())
            .map(|d| {
                bruhat_polytopes::perm::all_permutations(4)
                    .iter()
                    .filter(|w| d.contains(&w.to_vector()))
                    .count()
                    == 8
            })
            .unwrap_or(false);
        outcome(matched == 14 && exact_for_q, format!("{matched}/14 rows match; corrected system cuts out exactly [u,v]"))
    });

    r.criterion("1c", "the three displayed R-polynomials", sec, None, || {
        let s = generalized_r_identity(&p("21345"), &p("53421"), t(1, 3)).unwrap();
        let ok = s.lhs == poly(&[1, -4, 7, -8, 8, -8, 7, -4, 1])
            && s.r_ut_vt == poly(&[1, -4, 7, -8, 7, -4, 1])
            && s.r_u_vt == poly(&[1, -4, 7, -8, 8, -7, 4, -1])
            && s.holds();
        outcome(ok, format!("R_{{21345,53421}} = {}", s.lhs))
    });

    r.criterion("1d", "is_face(2143,4132,1243,4132) via an acyclic two-node graph", sec, None, || {
        let g = face_graph(&p("2143"), &p("4132"), &p("1243"), &p("4132")).unwrap();
        let ok = is_face(&p("2143"), &p("4132"), &p("1243"), &p("4132")).unwrap() && g.nodes.len() == 2 && g.is_acyclic();
        outcome(ok, format!("nodes {}, edges {:?}", g.nodes, g.edges))
    });

    r.criterion("1e", "special matching extends on (143265,254163,(3,6))", sec, None, || {
        let ext = extend_to_special_matching(&p("143265"), &p("254163"), t(3, 6)).unwrap();
        outcome(matches!(ext, Extension::Found { .. }), "")
    });

    r.criterion(
        "1e'",
        "(1324,4312,(2,4)) returns the paper's contradiction witness",
        sec,
        Some("the hand derivation's M(3412)=3214 already breaks the cover 1432 ⋖ 3412; the search stops at that earlier dead end"),
        || {
            let iv = BruhatInterval::new(p("1324"), p("4312")).unwrap();
            let ext = extend_to_special_matching(&p("1324"), &p("4312"), t(2, 4)).unwrap();
            let Extension::Failed { witness } = ext else { return outcome(false, "a matching was found") };
            // the paper's witness: M(2314) = 2413 ≱ 1342 = M(1324) on the cover 1324 ⋖ 2314
            let paper = matches!(witness.contradiction,
                Contradiction::ViolatedCover { below, above, .. } if below == p("1324") && above == p("2314"));
            let hand: Vec<(Permutation, Permutation)> = [
                ("4312", "4213"), ("4132", "4123"), ("1432", "1423"), ("1342", "1324"),
                ("3142", "3124"), ("3412", "3214"), ("2413", "2314"),
            ]
            .iter()
            .map(|(a, b)| (p(a), p(b)))
            .collect();
            let bad = bruhat_polytopes::rpoly::cover_violations(&iv, &hand);
            let detail = format!(
                "search fails at \"{}\"; the paper's assignments violate {} covers including 1324 ⋖ 2314: {}",
                witness.contradiction.to_string(),
                bad.len(),
                bad.contains(&(p("1324"), p("2314")))
            );
            outcome(paper, detail)
        },
    );

    r.criterion("1f", "recurrence counterexample and converse-failure example", sec, None, || {
        let main = recurrence_counterexample_check();
        let converse = counterexample_report(p("1243"), p("4312"), t(2, 4));
        let ok = main.confirmed() && converse.lifting_relations_hold && !converse.t_inversion_minimal;
        outcome(ok, format!("R = {} vs recurrence {}", main.sides.lhs, main.sides.rhs))
    });

    let start = Instant::now();
    let s4 = run_checks(&Suite::ALL, &CheckConfig::exhaustive(4)).expect("S_4 run");
    let s4_time = start.elapsed();
    let minute = Duration::from_secs(60);
    let pre = |ok: Outcome| move || ok;
    use Suite::*;
    let groups: [(&str, &str, &[(Suite, &str)]); 9] = [
        ("2a", "generalized lifting; a minimal t always exists", &[(Lifting, "generalized-lifting"), (Lifting, "minimal-transposition-exists")]),
        ("2b", "chain independence, atom/coatom partitions, increasing-cycle-free", &[(Dimension, "chain-independence"), (Dimension, "atom-coatom-partition"), (Dimension, "increasing-cycle-free")]),
        ("2c", "dimension formula equals affine rank", &[(Dimension, "dimension-equals-affine-rank")]),
        ("2d", "inequality description is exact on S_4", &[(Dimension, "inequality-exact")]),
        ("2e", "face criterion ⟺ LP; oracle faces are intervals", &[(Faces, "face-criterion-vs-lp"), (Faces, "faces-are-intervals"), (Faces, "witness-argmax")]),
        ("2f", "diameter equals rank; edge lemma", &[(Faces, "diameter-equals-rank"), (Faces, "edge-lemma")]),
        ("2g", "R-recurrences and invariants", &[(Rpoly, "generalized-recurrence"), (Rpoly, "descent-independence"), (Rpoly, "degree-leading-constant")]),
        ("2h", "rank 3: toric ⟺ 3- or 4-crown", &[(Dimension, "rank3-toric-iff-crown-3-or-4")]),
        ("2i", "parabolic faces theorem, 0-faces ↔ cosets, remark pair", &[(Parabolic, "faces-theorem"), (Parabolic, "points-biject-cosets"), (Parabolic, "remark-pair")]),
    ];
    for (id, name, props) in groups {
        r.criterion(id, name, minute, None, pre(all_pass(&s4, props)));
    }
    r.criterion("2", "every S_4 property suite, single-threaded", minute, None, || {
        outcome(s4.passed() && s4_time <= minute, format!("{} pairs in {:.1} s", s4.instances, s4_time.as_secs_f64()))
    });

    let start = Instant::now();
    let s5 = run_checks(&[Lifting, Dimension, Rpoly, Faces], &CheckConfig::sampled(5, 500, 7)).expect("S_5 run");
    let s5_time = start.elapsed();
    let limit = Duration::from_secs(120);
    r.criterion("3", "sampled S_5 (500 pairs, seed 7)", limit, None, || {
        let o = all_pass(
            &s5,
            &[
                (Lifting, "generalized-lifting"),
                (Dimension, "dimension-equals-affine-rank"),
                (Rpoly, "generalized-recurrence"),
                (Faces, "diameter-equals-rank"),
            ],
        );
        outcome(o.ok && s5.passed() && s5_time <= limit, format!("{}; {:.1} s", o.detail, s5_time.as_secs_f64()))
    });

    let m = s4.suite(Minkowski).expect("minkowski suite");
    for prop in &m.properties {
        r.report("4", prop.name, &format!("{}/{} S_4 intervals equal to Q_{{u,v}} up to translation", prop.held, prop.checked));
    }

    if r.unexpected > 0 {
        println!("{} unexpected result(s)", r.unexpected);
        std::process::exit(1);
    }
    println!("acceptance: no unexpected results");
}

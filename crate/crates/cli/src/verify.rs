//! Cross-checks the fast verdicts, the explicit constructions, cover
//! uniqueness, and the knot-class predictions against exhaustive enumeration
//! on every instance with `m * n` up to a bound.

use std::collections::BTreeSet;

use hamtorus::{
    build_cycle_cover, build_deleted_ham_cycle, build_pushed_ham_cycles,
    enumerate_cycle_covers_with_limit, enumerate_ham_cycles_with_limit,
    is_deleted_rect_hamiltonian, is_pushed_product_hamiltonian, is_single_cycle, knot_class,
    pushed_equals_deleted, BigInt, Moduli, Rectangle, TorusDigraph, Vertex,
};

pub struct VerifyOutcome {
    pub instances: u64,
    pub discrepancies: Vec<String>,
}

/// Runs the sweep over all `2 <= m, n` with `m * n <= limit`. The oracle
/// refuses instances above `cap` vertices, so `limit <= cap` is required.
/// `corrupt` flips the fast pushed verdict; it exists as a negative control
/// so the test suite can confirm the sweep actually detects mismatches.
pub fn run(limit: u64, cap: u64, corrupt: bool) -> VerifyOutcome {
    let mut outcome = VerifyOutcome {
        instances: 0,
        discrepancies: Vec::new(),
    };
    for m in 2..=(limit / 2) {
        for n in 2..=(limit / m) {
            check_instance(m, n, cap, corrupt, &mut outcome);
            outcome.instances += 1;
        }
    }
    outcome
}

fn check_instance(m: u64, n: u64, cap: u64, corrupt: bool, out: &mut VerifyOutcome) {
    let mut report = |msg: String| out.discrepancies.push(format!("({m}, {n}): {msg}"));
    let moduli = Moduli::from_u64(m, n).expect("m, n >= 2");
    let two = BigInt::from(2);

    // Pushed product vs oracle.
    let mut fast = is_pushed_product_hamiltonian(&moduli).hamiltonian();
    if corrupt {
        fast = !fast;
    }
    let pushed = TorusDigraph::new(m, n)
        .expect("valid")
        .pushed_at(Vertex::new(0, 1));
    let cycles = enumerate_ham_cycles_with_limit(&pushed, 4, cap).expect("within cap");
    if fast != (cycles.count > 0) {
        report(format!(
            "pushed verdict {fast} but enumeration found {} cycles",
            cycles.count
        ));
    }
    if (m == 2 || n == 2) && (cycles.count > 0) != (m.max(n) <= 3) {
        report("small-cycle rule disagrees with enumeration".to_string());
    }
    if m >= 3 && n >= 3 {
        match pushed_equals_deleted(&moduli) {
            Ok(true) => {}
            Ok(false) => report("pushed and rectangle-deleted verdicts differ".to_string()),
            Err(e) => report(format!("pushed_equals_deleted failed: {e}")),
        }
        if cycles.count > 0 {
            if cycles.count != 2 {
                report(format!("expected exactly 2 cycles, found {}", cycles.count));
            }
            match build_pushed_ham_cycles(&moduli) {
                Ok((a, b)) => {
                    let built: BTreeSet<_> =
                        [a, b].into_iter().map(|c| c.vertices().to_vec()).collect();
                    let found: BTreeSet<_> = cycles
                        .witnesses
                        .iter()
                        .map(|c| c.vertices().to_vec())
                        .collect();
                    if built != found {
                        report("constructed pushed cycles differ from enumeration".to_string());
                    }
                }
                Err(e) => report(format!("pushed construction failed: {e}")),
            }
        }
    }

    // Rectangle-deleted product: cover uniqueness, construction equality,
    // verdict, and the knot-class single-cycle prediction.
    let deleted = TorusDigraph::new(m, n)
        .expect("valid")
        .with_deleted_rect(Rectangle::at_origin(2, 2))
        .expect("2 x 2 fits");
    let covers = enumerate_cycle_covers_with_limit(&deleted, 2, cap).expect("within cap");
    if covers.count > 1 {
        report(format!("found {} cycle covers, expected at most 1", covers.count));
    }
    let built_cover = build_cycle_cover(&moduli);
    match (covers.count, &built_cover) {
        (1, Ok(c)) => {
            if c != &covers.witnesses[0] {
                report("constructed cover differs from the enumerated one".to_string());
            }
        }
        (0, Err(_)) => {}
        (1, Err(e)) => report(format!("cover exists but construction failed: {e}")),
        (0, Ok(_)) => report("construction produced a cover but none exists".to_string()),
        _ => {}
    }

    let deleted_cycles = enumerate_ham_cycles_with_limit(&deleted, 2, cap).expect("within cap");
    if covers.count == 1 {
        let knot = knot_class(&covers.witnesses[0]);
        if is_single_cycle(&knot) != (deleted_cycles.count == 1) {
            report("knot-class prediction disagrees with enumeration".to_string());
        }
    }
    if m >= 3 && n >= 3 {
        let fast_deleted = is_deleted_rect_hamiltonian(&moduli, &two, &two)
            .expect("2 x 2 is valid")
            .hamiltonian();
        if fast_deleted != (deleted_cycles.count > 0) {
            report(format!(
                "deleted verdict {fast_deleted} but enumeration found {} cycles",
                deleted_cycles.count
            ));
        }
        if deleted_cycles.count == 1 {
            match build_deleted_ham_cycle(&moduli) {
                Ok(c) => {
                    if c != deleted_cycles.witnesses[0] {
                        report("constructed deleted cycle differs from enumeration".to_string());
                    }
                }
                Err(e) => report(format!("deleted construction failed: {e}")),
            }
        }
    }
}

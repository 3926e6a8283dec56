//! The invariant battery: every structural identity this crate relies on,
//! run against one graph and reported check by check. Backs the `verify`
//! command of the CLI.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::counting::{
    binet_cauchy_expansion, check_nilpotency, count_trees, enumerate_trees, tree_weight,
    CountError,
};
use crate::graph::{Digraph, Mode};
use crate::laplacian::{column_sums_vanish, verify_factorization};
use crate::spectral::{stationary, tree_vector, verify_cofactor_constancy, verify_kernel};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: String) -> Self {
        Check {
            name,
            passed: true,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Check {
            name,
            passed: false,
            detail,
        }
    }
}

/// Run the full battery against a graph.
///
/// Checks, in order: incidence factorizations (full and reduced at every
/// root), Laplacian column sums, determinant-versus-enumeration equality
/// for every root and both modes, the Binet-Cauchy term dichotomy,
/// nilpotency of every tree's internal adjacency, the kernel identities,
/// cofactor constancy, and entrywise positivity under strong connectivity.
///
/// Enumeration-backed checks honor `cap`; exceeding it is an error, not a
/// failed check.
pub fn run_checks(g: &Digraph, cap: u64) -> Result<Vec<Check>, CountError> {
    let mut checks = Vec::new();
    let roots: Vec<_> = g.vertices().collect();
    let modes = [Mode::Outgoing, Mode::Incoming];

    checks.push(if verify_factorization(g, None) {
        Check::pass(
            "factorization",
            "incidence factorizations hold, full and reduced at every root".into(),
        )
    } else {
        Check::fail("factorization", "an incidence factorization identity failed".into())
    });

    checks.push(if column_sums_vanish(g) {
        Check::pass("column-sums", "all column sums of L1 and L2 are zero".into())
    } else {
        Check::fail("column-sums", "a Laplacian column sum is nonzero".into())
    });

    let mut oracle_failures = Vec::new();
    for &root in &roots {
        for mode in modes {
            let det = count_trees(g, root, mode).value;
            let report = enumerate_trees(g, root, mode, cap)?;
            if det != report.total_weight {
                oracle_failures.push(format!(
                    "root {} {}: det {} vs enumerated {}",
                    g.label(root),
                    mode,
                    det,
                    report.total_weight
                ));
            }
        }
    }
    checks.push(if oracle_failures.is_empty() {
        Check::pass(
            "oracle-equivalence",
            format!(
                "determinant equals enumerated total for {} roots, both modes",
                roots.len()
            ),
        )
    } else {
        Check::fail("oracle-equivalence", oracle_failures.join("; "))
    });

    let mut dichotomy_failures = Vec::new();
    for &root in &roots {
        for mode in modes {
            let expansion = binet_cauchy_expansion(g, root, mode, cap)?;
            for term in &expansion.terms {
                let expected = if term.classification.is_tree() {
                    tree_weight(g, &term.subset)
                } else {
                    num_traits::Zero::zero()
                };
                if term.term_value != expected {
                    dichotomy_failures.push(format!(
                        "root {} {} subset {:?}: term {} expected {}",
                        g.label(root),
                        mode,
                        term.subset.ids(),
                        term.term_value,
                        expected
                    ));
                }
            }
            if expansion.sum != count_trees(g, root, mode).value {
                dichotomy_failures.push(format!(
                    "root {} {}: term sum {} differs from determinant",
                    g.label(root),
                    mode,
                    expansion.sum
                ));
            }
        }
    }
    checks.push(if dichotomy_failures.is_empty() {
        Check::pass(
            "term-dichotomy",
            "every expansion term is the subset weight for trees and zero otherwise".into(),
        )
    } else {
        Check::fail("term-dichotomy", dichotomy_failures.join("; "))
    });

    let mut nilpotency_failures = Vec::new();
    for &root in &roots {
        let report = enumerate_trees(g, root, Mode::Outgoing, cap)?;
        for tree in &report.trees {
            if !check_nilpotency(g, tree, root)? {
                nilpotency_failures.push(format!(
                    "root {} tree {:?}",
                    g.label(root),
                    tree.ids()
                ));
            }
        }
    }
    checks.push(if nilpotency_failures.is_empty() {
        Check::pass(
            "nilpotency",
            "D^(p-1) = 0 for every enumerated tree's internal adjacency".into(),
        )
    } else {
        Check::fail("nilpotency", nilpotency_failures.join("; "))
    });

    checks.push(if verify_kernel(g) {
        Check::pass("kernel", "L1 x = 0 and L2 y = 0 exactly".into())
    } else {
        Check::fail("kernel", "a tree vector is not in its Laplacian's kernel".into())
    });

    let lp = crate::laplacian::laplacians(g);
    let constancy = verify_cofactor_constancy(&lp.l1).unwrap_or(false)
        && verify_cofactor_constancy(&lp.l2).unwrap_or(false);
    checks.push(if constancy {
        Check::pass(
            "cofactor-constancy",
            "cofactors within each column of L1 and L2 are equal".into(),
        )
    } else {
        Check::fail("cofactor-constancy", "column cofactors differ".into())
    });

    let positivity = if g.is_strongly_connected() {
        let positive = modes.iter().all(|&mode| {
            tree_vector(g, mode)
                .entries
                .iter()
                .all(|e| e.is_positive())
        }) && modes
            .iter()
            .all(|&mode| stationary(g, mode).is_ok());
        if positive {
            Check::pass(
                "positivity",
                "graph is strongly connected and both tree vectors are entrywise positive".into(),
            )
        } else {
            Check::fail(
                "positivity",
                "strongly connected graph has a nonpositive tree-vector entry".into(),
            )
        }
    } else {
        Check::pass(
            "positivity",
            "graph is not strongly connected; nothing to check".into(),
        )
    };
    checks.push(positivity);

    Ok(checks)
}

/// True iff every check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

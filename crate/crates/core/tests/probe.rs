// Temporary probe of the inductive-equation prefactors. Will be replaced by
// the final integration tests once outcomes are confirmed.

use grasslab_core::jack::EnsembleSpec;
use grasslab_core::ode;
use grasslab_core::rat::{rat, rint, Rat};
use num::One;

#[test]
fn probe_theorem61() {
    for (beta, p, q, n) in [
        (Rat::one(), 1i64, 1i64, 2i64),
        (Rat::one(), 2, 3, 6),
        (rat(2, 1), 1, 1, 4),
        (rat(2, 1), 2, 2, 6),
        (rat(1, 2), 2, 2, 6),
        (rat(1, 2), 2, 3, 8),
    ] {
        let spec = EnsembleSpec::with_ints(beta.clone(), n, p, q);
        match ode::theorem61_residual(&spec, 10) {
            Ok(rep) => println!(
                "beta={beta} (p,q,n)=({p},{q},{n}): pass={} first={:?} note={:?}",
                rep.pass, rep.first_nonzero, rep.note
            ),
            Err(e) => println!("beta={beta} (p,q,n)=({p},{q},{n}): ERROR {e}"),
        }
    }
}

#[test]
fn probe_wishart() {
    for (n, p, b) in [(4u32, 2u32, 1i64), (5, 3, 1), (6, 2, 2)] {
        match ode::wishart_inductive_residual(n, p, &rint(b), 10) {
            Ok(rep) => println!(
                "wishart inductive (n,p,b)=({n},{p},{b}): pass={} first={:?}",
                rep.pass, rep.first_nonzero
            ),
            Err(e) => println!("wishart inductive ({n},{p},{b}): ERROR {e}"),
        }
    }
    for (n, p, a, b) in [(3u32, 1u32, 1i64, 1i64), (4, 2, 0, 1), (5, 2, 2, 1)] {
        match ode::wishart_painleve_residual(n, p, &rint(a), &rint(b), 10) {
            Ok(rep) => println!(
                "wishart beta1 (n,p,a,b)=({n},{p},{a},{b}): pass={} first={:?} note={:?}",
                rep.pass, rep.first_nonzero, rep.note
            ),
            Err(e) => println!("wishart beta1 ({n},{p},{a},{b}): ERROR {e}"),
        }
    }
}

#[test]
fn probe_jacobi() {
    for (n, p, q) in [(6u32, 1u32, 2u32), (8, 2, 3), (7, 2, 3)] {
        match ode::jacobi_corr_residual(n, p, q, 10, ode::JacobiVariant::Beta1) {
            Ok(rep) => println!(
                "jacobi beta1 (n,p,q)=({n},{p},{q}): pass={} first={:?}",
                rep.pass, rep.first_nonzero
            ),
            Err(e) => println!("jacobi beta1 ({n},{p},{q}): ERROR {e}"),
        }
    }
    for (n, p, q) in [(8u32, 2u32, 3u32), (9, 2, 4)] {
        match ode::jacobi_corr_residual(n, p, q, 10, ode::JacobiVariant::BetaHalfInductive) {
            Ok(rep) => println!(
                "jacobi inductive (n,p,q)=({n},{p},{q}): pass={} first={:?}",
                rep.pass, rep.first_nonzero
            ),
            Err(e) => println!("jacobi inductive ({n},{p},{q}): ERROR {e}"),
        }
    }
}

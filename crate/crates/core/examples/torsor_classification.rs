//! Torsors over (A,mu) up to isomorphism, matched against H^1 classes.
//!
//!     cargo run --example torsor_classification

use nabelh1::cohomology::compute_h1;
use nabelh1::torsor::{classify_torsors, gamma, lambda, torsor_iso, torsor_product};
use nabelh1::{Bimodule, FiniteTopGroup, GroupAction, SearchOptions};

fn main() -> nabelh1::Result<()> {
    let opts = SearchOptions::default();
    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let b = Bimodule::with_trivial_r(c2.clone(), c2.clone(), GroupAction::trivial(c2.clone(), c2))?;
    let h1 = compute_h1(&b, &opts)?;

    let c = classify_torsors(&b, &h1, &opts)?;
    println!(
        "{} torsors on the set A, {} isomorphism classes, {} H1 classes",
        c.torsors.len(),
        c.classes.len(),
        h1.len()
    );
    println!(
        "lambda bijective {}, lambda(gamma) = id {}, gamma(lambda) isomorphic {}",
        c.lambda_bijective, c.lambda_gamma_identity, c.gamma_lambda_isomorphic
    );

    let twisted = gamma(&b, h1.representative(1))?;
    println!(
        "twisted torsor: G acts by {:?}, f = {:?}",
        twisted.g_action, twisted.f
    );
    println!(
        "isomorphic to itself via {:?}",
        torsor_iso(&b, &twisted, &twisted)
    );

    let square = torsor_product(&b, &h1, &twisted, 0, &twisted, 1)?;
    println!(
        "twisted * twisted lies in class {}",
        lambda(&b, &h1, &square, 0)?
    );
    Ok(())
}

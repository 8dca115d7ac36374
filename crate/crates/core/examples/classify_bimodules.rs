//! Precrossed, partially crossed and crossed bimodules, with every violated
//! law reported.
//!
//!     cargo run --example classify_bimodules

use nabelh1::bimodule::{as_selfbimodule, classify_bimodule, make_conjugation_bimodule};
use nabelh1::{BimoduleData, FiniteTopGroup, GroupAction, GroupMap};

fn main() -> nabelh1::Result<()> {
    let s3 = FiniteTopGroup::symmetric(3).into_ref();
    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let c4 = FiniteTopGroup::cyclic(4).into_ref();

    let selfmod = as_selfbimodule(
        s3.clone(),
        s3.clone(),
        GroupMap::identity(s3.clone()),
        GroupAction::conjugation(s3.clone()),
    )?;
    println!("(S3, Id): {:?}", selfmod.level());

    let conj = make_conjugation_bimodule(
        c2.clone(),
        s3.clone(),
        GroupAction::trivial(c2.clone(), s3.clone()),
    )?;
    println!(
        "conjugation bimodule of S3: {:?}, |R| = {}",
        conj.level(),
        conj.r.order()
    );

    // C2 inverts C4 and mu reduces mod 2: the crossed law fails off [R,R] = 1
    let inversion =
        GroupAction::from_fn(
            c2.clone(),
            c4.clone(),
            |g, x| if g == 0 { x } else { (4 - x) % 4 },
        )?;
    let mod2 = GroupMap::homomorphism(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?;
    let pc = as_selfbimodule(c4.clone(), c2.clone(), mod2.clone(), inversion.clone())?;
    let report = classify_bimodule(&pc)?;
    println!("C4 over C2 by inversion: {:?}", report.level);
    for v in &report.violations {
        println!("  {v}");
    }

    // G swaps the factors of C2 x C2 but mu reads only the first one
    let v4 = FiniteTopGroup::direct_product(&c2, &c2).into_ref();
    let broken = BimoduleData {
        g: c2.clone(),
        r: c2.clone(),
        a: v4.clone(),
        mu: GroupMap::homomorphism(
            v4.clone(),
            c2.clone(),
            v4.elements().map(|x| x / 2).collect(),
        )?,
        act_g_a: GroupAction::from_fn(c2.clone(), v4.clone(), |g, x| {
            if g == 0 {
                x
            } else {
                (x % 2) * 2 + x / 2
            }
        })?,
        act_g_r: GroupAction::trivial(c2.clone(), c2.clone()),
        act_r_a: GroupAction::trivial(c2.clone(), v4.clone()),
    };
    match classify_bimodule(&broken) {
        Ok(c) => println!("unexpected level {:?}", c.level),
        Err(e) => println!("swap bimodule rejected: {e}"),
    }
    Ok(())
}

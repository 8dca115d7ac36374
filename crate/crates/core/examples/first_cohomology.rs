//! Derivation pairs, their star product and the classes of H^1(G,(A,mu)).
//!
//!     cargo run --example first_cohomology

use nabelh1::bimodule::as_selfbimodule;
use nabelh1::cohomology::{compute_h1, der_group, equivalent};
use nabelh1::{Bimodule, FiniteTopGroup, GroupAction, GroupMap, SearchOptions};

fn main() -> nabelh1::Result<()> {
    let opts = SearchOptions::default();

    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let t1 = Bimodule::with_trivial_r(
        c2.clone(),
        c2.clone(),
        GroupAction::trivial(c2.clone(), c2.clone()),
    )?;
    let h1 = compute_h1(&t1, &opts)?;
    println!("H1(C2,(C2,1)) has {} classes:", h1.len());
    for (i, p) in h1.representatives().enumerate() {
        println!("  class {i}: alpha = {:?}, r = {}", p.alpha, p.r);
    }
    println!(
        "the two pairs are equivalent: {}",
        equivalent(&h1.items[0], &h1.items[1], &t1).is_some()
    );

    let s3 = FiniteTopGroup::symmetric(3).into_ref();
    let t3 = as_selfbimodule(
        s3.clone(),
        s3.clone(),
        GroupMap::identity(s3.clone()),
        GroupAction::conjugation(s3.clone()),
    )?;
    let der = der_group(&t3, &opts)?;
    println!(
        "Der(S3,(S3,Id)): {} pairs forming a group, abelian: {}",
        der.order(),
        der.group.is_abelian()
    );
    let h1 = compute_h1(&t3, &opts)?;
    println!("H1(S3,(S3,Id)) has {} class", h1.len());

    // dropping continuity only matters when the topology is coarse
    let coarse = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
    let t2 =
        Bimodule::with_trivial_r(coarse.clone(), c2.clone(), GroupAction::trivial(coarse, c2))?;
    println!(
        "indiscrete C2: {} continuous pairs, {} pairs without the continuity requirement",
        compute_h1(&t2, &opts)?.items.len(),
        compute_h1(&t2, &opts.all_maps())?.items.len()
    );
    Ok(())
}

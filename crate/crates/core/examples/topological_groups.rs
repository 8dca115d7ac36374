//! Finite groups with a coset topology, and what continuity rules out.
//!
//!     cargo run --example topological_groups

use nabelh1::cohomology::enumerate_crossed_homs;
use nabelh1::{FiniteTopGroup, GroupAction, GroupMap, SearchOptions};

fn main() -> nabelh1::Result<()> {
    let s3 = FiniteTopGroup::symmetric(3);
    println!(
        "S3: order {}, center {:?}, commutator subgroup {:?}",
        s3.order(),
        s3.center(),
        s3.commutator_subgroup()
    );
    println!("normal subgroups of S3: {:?}", s3.normal_subgroups());

    // S3 topologised by A3: open sets are unions of the two cosets of A3
    let a3 = s3
        .normal_subgroups()
        .into_iter()
        .find(|n| n.len() == 3)
        .expect("A3");
    let coarse = s3.with_open_subgroup(&a3)?.into_ref();
    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let sign: Vec<usize> = coarse
        .elements()
        .map(|x| usize::from(!a3.contains(&x)))
        .collect();
    let sign = GroupMap::homomorphism(coarse.clone(), c2.clone(), sign)?;
    println!("sign map S3/A3 -> C2 continuous: {}", sign.is_continuous());

    // an indiscrete C2 maps continuously into a discrete group only trivially
    let coarse_c2 = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
    let id = GroupMap::homomorphism(coarse_c2.clone(), c2.clone(), vec![0, 1])?;
    println!(
        "identity from indiscrete C2 to discrete C2 continuous: {} (first failure at {:?})",
        id.is_continuous(),
        id.first_discontinuity()
    );

    let act = GroupAction::trivial(coarse_c2.clone(), c2.clone());
    let opts = SearchOptions::default();
    let all = enumerate_crossed_homs(&coarse_c2, &c2, &act, &opts.all_maps())?;
    let continuous = enumerate_crossed_homs(&coarse_c2, &c2, &act, &opts)?;
    println!(
        "crossed homomorphisms C2 -> C2: {} in total, {} continuous",
        all.len(),
        continuous.len()
    );
    Ok(())
}

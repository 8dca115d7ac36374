//! Restriction, inflation and the exact sequence between them, for S3 acting
//! trivially on C2 with N = A3.
//!
//!     cargo run --example inflation_restriction

use nabelh1::change::{inf_res_exactness, inflation, restriction};
use nabelh1::{Bimodule, FiniteTopGroup, GroupAction, SearchOptions};

fn main() -> nabelh1::Result<()> {
    let opts = SearchOptions::default();
    let s3 = FiniteTopGroup::symmetric(3).into_ref();
    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let b = Bimodule::with_trivial_r(s3.clone(), c2.clone(), GroupAction::trivial(s3.clone(), c2))?;
    let a3 = s3
        .normal_subgroups()
        .into_iter()
        .find(|n| n.len() == 3)
        .expect("A3");

    let res = restriction(&b, &a3, &opts)?;
    println!(
        "Res: {} classes -> {} classes, images {:?}",
        res.source.len(),
        res.target.len(),
        res.map.images
    );
    let inf = inflation(&b, &a3, &opts)?;
    println!(
        "Inf: {} classes -> {} classes, images {:?}",
        inf.source.len(),
        inf.target.len(),
        inf.map.images
    );

    let r = inf_res_exactness(&b, &a3, &opts)?;
    println!(
        "|H1(G/N)| = {}, |H1(G)| = {}, |H1(N)| = {}",
        r.quotient_classes, r.classes, r.subgroup_classes
    );
    println!(
        "Inf injective {}, ker Res = im Inf {}, Res lands in fixed classes {}",
        r.inf_injective, r.image_inf_is_kernel_res, r.res_lands_in_fixed
    );
    println!("exact: {}", r.exact());
    Ok(())
}

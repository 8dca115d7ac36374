//! The map from H^1(G,(A,mu)) into H^1(G,A), inner pairs and the group law
//! on classes.
//!
//!     cargo run --example zeta_embedding

use nabelh1::bimodule::make_conjugation_bimodule;
use nabelh1::cohomology::{compute_h1, h1_group_structure, inn_normality, inn_subgroup, zeta};
use nabelh1::{FiniteTopGroup, GroupAction, SearchOptions};

fn main() -> nabelh1::Result<()> {
    let opts = SearchOptions::default();
    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let s3 = FiniteTopGroup::symmetric(3).into_ref();
    let b = make_conjugation_bimodule(c2.clone(), s3.clone(), GroupAction::trivial(c2, s3))?;

    let z = zeta(&b, &opts)?;
    println!(
        "|H1(G,(A,mu))| = {}, |H1(G,A)| = {}, |H1(G,R)| = {}",
        z.h1.len(),
        z.plain_a.len(),
        z.plain_r.len()
    );
    println!(
        "zeta = {:?}, injective {}, surjective {}",
        z.map.images,
        z.map.is_injective(),
        z.is_surjective()
    );
    println!("mu1 = {:?}, trivial {}", z.mu1.images, z.mu1_trivial());

    let inn = inn_subgroup(&b)?;
    let normal = inn_normality(&b, &opts)?;
    println!(
        "Inn has {} pairs; normal {} (criterion {})",
        inn.len(),
        normal.direct,
        normal.criterion
    );

    let h1 = compute_h1(&b, &opts)?;
    match h1_group_structure(&b, &h1) {
        Ok(g) => println!(
            "classes form a group of order {} ({:?}): {:?}",
            g.order(),
            g.basis,
            g.table
        ),
        Err(e) => println!("no group structure: {e}"),
    }
    Ok(())
}

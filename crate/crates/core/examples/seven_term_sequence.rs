//! H^2 by brute force and the seven-term sequence of C2 -> C4 -> C2.
//!
//!     cargo run --example seven_term_sequence

use nabelh1::extension::{compute_h2, seven_term_check, BimoduleExtension};
use nabelh1::{Bimodule, FiniteTopGroup, GroupAction, GroupMap, SearchOptions};

fn main() -> nabelh1::Result<()> {
    let opts = SearchOptions::default();
    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let c4 = FiniteTopGroup::cyclic(4).into_ref();
    let module = |a: &nabelh1::GroupRef| {
        Bimodule::with_trivial_r(
            c2.clone(),
            a.clone(),
            GroupAction::trivial(c2.clone(), a.clone()),
        )
    };

    let h2 = compute_h2(
        &c2,
        &c2,
        &GroupAction::trivial(c2.clone(), c2.clone()),
        &opts,
    )?;
    println!(
        "H2(C2,C2): {} classes from {} normalized cocycles",
        h2.len(),
        h2.classes.items.len()
    );

    let e = BimoduleExtension::new(
        module(&c2)?,
        module(&c4)?,
        module(&c2)?,
        GroupMap::homomorphism(c2.clone(), c4.clone(), vec![0, 2])?,
        GroupMap::homomorphism(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?,
        None,
        &opts,
    )?;
    println!("chosen section: {:?}", e.section.images());
    let r = seven_term_check(&e, &opts)?;
    for node in &r.nodes {
        println!("  exact at {}: {}", node.node, node.exact);
    }
    println!(
        "delta1 = {:?} (the class that does not lift goes to the nontrivial H2 class)",
        r.delta1
    );
    println!(
        "independent of the section: {}, of the representative: {}",
        r.section_independent, r.representative_independent
    );
    Ok(())
}

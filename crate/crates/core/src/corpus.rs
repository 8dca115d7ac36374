//! The bundled fixture corpus, built from library constructions.
//!
//! | name  | contents |
//! |-------|----------|
//! | `T1`  | `G = C2` acting trivially on `A = C2`, `R = 1` |
//! | `T2`  | as `T1` but `G` indiscrete, so only the trivial crossed homomorphism is continuous |
//! | `T3`  | `(S3, Id)` as a crossed `S3`-module over itself |
//! | `T4`  | the extension `C2 -> C4 -> C2` with trivial `G = C2` action |
//! | `T5`  | `G = S3` acting trivially on `C2`, with `N = A3` for inflation-restriction |
//! | `CONJ`| the conjugation bimodule `(S3, pi)` over `R = S3/Z(S3)`, `G = C2` trivial |
//! | `PC`  | `C4` as a partially crossed `C2`-module (inversion, `mu` = reduction mod 2) |
//! | `RET` | `C2 x C2 -> C2` projection with the retraction `x -> (0, x)` |
//! | `P1`  | the torsor of the nontrivial class of `T1` |

use crate::bimodule::{as_selfbimodule, make_conjugation_bimodule, Bimodule, BimoduleData};
use crate::cohomology::compute_h1;
use crate::error::Result;
use crate::fixture::{
    ActionSpec, BimoduleSpec, ExtensionSpec, FixtureFile, GroupSpec, MapSpec, TorsorSpec,
};
use crate::group::{FiniteTopGroup, GroupRef};
use crate::map::GroupMap;
use crate::torsor::gamma;
use crate::{GroupAction, SearchOptions};

/// Collects named library objects into a [`FixtureFile`].
#[derive(Default)]
pub struct CorpusBuilder {
    pub file: FixtureFile,
}

impl CorpusBuilder {
    pub fn group(&mut self, name: &str, g: &FiniteTopGroup) {
        let mut open = g.open_subgroup().to_vec();
        open.sort_unstable();
        self.file.groups.insert(
            name.into(),
            GroupSpec {
                order: g.order(),
                cayley: g.cayley(),
                open_subgroup: open,
                identity: None,
            },
        );
    }

    pub fn action(&mut self, name: &str, actor: &str, space: &str, act: &GroupAction) {
        self.file.actions.insert(
            name.into(),
            ActionSpec {
                actor: actor.into(),
                space: space.into(),
                table: act.table(),
            },
        );
    }

    pub fn map(&mut self, name: &str, domain: &str, codomain: &str, m: &GroupMap) {
        let spec = MapSpec {
            domain: domain.into(),
            codomain: codomain.into(),
            images: m.images().to_vec(),
            homomorphism: m.is_homomorphism(),
        };
        self.file.maps.insert(name.into(), spec);
    }

    /// Adds the bimodule and its structure maps under `<name>.mu`,
    /// `<name>.GA`, `<name>.GR` and `<name>.RA`. The groups must already be
    /// present under the given names.
    pub fn bimodule(&mut self, name: &str, groups: [&str; 3], b: &Bimodule) -> &mut BimoduleSpec {
        let [g, r, a] = groups;
        let key = |s: &str| format!("{name}.{s}");
        self.map(&key("mu"), a, r, &b.mu);
        self.action(&key("GA"), g, a, &b.act_g_a);
        self.action(&key("GR"), g, r, &b.act_g_r);
        self.action(&key("RA"), r, a, &b.act_r_a);
        let spec = BimoduleSpec {
            g: g.into(),
            r: r.into(),
            a: a.into(),
            mu: key("mu"),
            act_g_a: key("GA"),
            act_g_r: key("GR"),
            act_r_a: key("RA"),
            normal_subgroup: None,
            retraction: None,
        };
        self.file.bimodules.entry(name.into()).or_insert(spec)
    }
}

fn trivial_r(g: &GroupRef, a: &GroupRef) -> Result<Bimodule> {
    Bimodule::with_trivial_r(
        g.clone(),
        a.clone(),
        GroupAction::trivial(g.clone(), a.clone()),
    )
}

pub fn bundled_corpus() -> Result<FixtureFile> {
    let mut c = CorpusBuilder::default();
    let c1 = FiniteTopGroup::trivial().into_ref();
    let c2 = FiniteTopGroup::cyclic(2).into_ref();
    let c2_coarse = FiniteTopGroup::cyclic(2).indiscrete().into_ref();
    let c4 = FiniteTopGroup::cyclic(4).into_ref();
    let s3 = FiniteTopGroup::symmetric(3).into_ref();
    let v4 = FiniteTopGroup::direct_product(&c2, &c2).into_ref();
    for (name, g) in [
        ("C1", &c1),
        ("C2", &c2),
        ("C2_indiscrete", &c2_coarse),
        ("C4", &c4),
        ("S3", &s3),
        ("C2xC2", &v4),
    ] {
        c.group(name, g);
    }

    let t1 = trivial_r(&c2, &c2)?;
    c.bimodule("T1", ["C2", "C1", "C2"], &t1);
    c.bimodule(
        "T2",
        ["C2_indiscrete", "C1", "C2"],
        &trivial_r(&c2_coarse, &c2)?,
    );
    let t3 = as_selfbimodule(
        s3.clone(),
        s3.clone(),
        GroupMap::identity(s3.clone()),
        GroupAction::conjugation(s3.clone()),
    )?;
    c.bimodule("T3", ["S3", "S3", "S3"], &t3);

    c.bimodule("T4.B", ["C2", "C1", "C4"], &trivial_r(&c2, &c4)?);
    c.map(
        "T4.iota",
        "C2",
        "C4",
        &GroupMap::homomorphism(c2.clone(), c4.clone(), vec![0, 2])?,
    );
    c.map(
        "T4.pi",
        "C4",
        "C2",
        &GroupMap::homomorphism(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?,
    );
    c.file.extensions.insert(
        "T4".into(),
        ExtensionSpec {
            a: "T1".into(),
            b: "T4.B".into(),
            c: "T1".into(),
            iota: "T4.iota".into(),
            pi: "T4.pi".into(),
            section: None,
        },
    );

    let a3 = s3
        .normal_subgroups()
        .into_iter()
        .find(|n| n.len() == 3)
        .expect("S3 has A3");
    c.bimodule("T5", ["S3", "C1", "C2"], &trivial_r(&s3, &c2)?)
        .normal_subgroup = Some(a3);

    let conj = make_conjugation_bimodule(
        c2.clone(),
        s3.clone(),
        GroupAction::trivial(c2.clone(), s3.clone()),
    )?;
    // S3 has trivial center, so R = S3/Z(S3) is S3 itself up to labels
    let r_name = if conj.r.cayley() == s3.cayley() {
        "S3"
    } else {
        "S3/Z"
    };
    if r_name != "S3" {
        c.group(r_name, &conj.r);
    }
    c.bimodule("CONJ", ["C2", r_name, "S3"], &conj);

    let inversion =
        GroupAction::from_fn(
            c2.clone(),
            c4.clone(),
            |g, x| if g == 0 { x } else { (4 - x) % 4 },
        )?;
    let pc = as_selfbimodule(
        c4.clone(),
        c2.clone(),
        GroupMap::homomorphism(c4.clone(), c2.clone(), vec![0, 1, 0, 1])?,
        inversion,
    )?;
    c.bimodule("PC", ["C2", "C2", "C4"], &pc);

    let ret = Bimodule::new(BimoduleData {
        g: c2.clone(),
        r: c2.clone(),
        a: v4.clone(),
        mu: GroupMap::homomorphism(
            v4.clone(),
            c2.clone(),
            v4.elements().map(|x| x / 2).collect(),
        )?,
        act_g_a: GroupAction::trivial(c2.clone(), v4.clone()),
        act_g_r: GroupAction::trivial(c2.clone(), c2.clone()),
        act_r_a: GroupAction::trivial(c2.clone(), v4.clone()),
    })?;
    c.map(
        "RET.rho",
        "C2",
        "C2xC2",
        &GroupMap::homomorphism(c2.clone(), v4.clone(), vec![0, 2])?,
    );
    c.bimodule("RET", ["C2", "C2", "C2xC2"], &ret).retraction = Some("RET.rho".into());

    let h1 = compute_h1(&t1, &SearchOptions::default())?;
    let p1 = gamma(&t1, h1.representative(1))?;
    c.file.torsors.insert(
        "P1".into(),
        TorsorSpec {
            bimodule: "T1".into(),
            g_action: p1.g_action,
            a_action: p1.a_action,
            f: p1.f,
        },
    );
    Ok(c.file)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::Level;
    use crate::fixture::resolve;

    #[test]
    fn corpus_resolves() {
        let doc = resolve(bundled_corpus().unwrap()).unwrap();
        assert_eq!(doc.bimodules["T3"].bimodule.level(), Level::Crossed);
        assert_eq!(doc.bimodules["CONJ"].bimodule.level(), Level::Crossed);
        assert_eq!(
            doc.bimodules["PC"].bimodule.level(),
            Level::PartiallyCrossed
        );
        assert_eq!(doc.extensions.len(), 1);
        assert_eq!(doc.torsors.len(), 1);
    }
}

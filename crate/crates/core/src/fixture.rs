//! JSON fixture documents: named groups, actions, maps, bimodules,
//! extensions and torsors, resolved and validated in one pass.
//!
//! Group tables may use any labelling; the identity is moved to index `0`
//! and every other table in the document is translated accordingly. The
//! emitted form always uses the canonical labels, so emitting a loaded
//! document and loading it again gives the same document.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bimodule::{Bimodule, BimoduleData};
use crate::error::Error;
use crate::extension::BimoduleExtension;
use crate::group::{validate_group, FiniteTopGroup, GroupRef};
use crate::map::GroupMap;
use crate::torsor::Torsor;
use crate::{GroupAction, SearchOptions};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureFile {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub actions: BTreeMap<String, ActionSpec>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub bimodules: BTreeMap<String, BimoduleSpec>,
    #[serde(default)]
    pub extensions: BTreeMap<String, ExtensionSpec>,
    #[serde(default)]
    pub torsors: BTreeMap<String, TorsorSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub order: usize,
    pub cayley: Vec<Vec<usize>>,
    pub open_subgroup: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub actor: String,
    pub space: String,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub domain: String,
    pub codomain: String,
    pub images: Vec<usize>,
    #[serde(default = "yes")]
    pub homomorphism: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "R")]
    pub r: String,
    #[serde(rename = "A")]
    pub a: String,
    pub mu: String,
    #[serde(rename = "act_G_on_A")]
    pub act_g_a: String,
    #[serde(rename = "act_G_on_R")]
    pub act_g_r: String,
    #[serde(rename = "act_R_on_A")]
    pub act_r_a: String,
    /// Elements of `G` spanning the normal subgroup used by `inf-res`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_subgroup: Option<Vec<usize>>,
    /// Name of a map `R -> A` used by the retraction checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retraction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionSpec {
    #[serde(rename = "A")]
    pub a: String,
    #[serde(rename = "B")]
    pub b: String,
    #[serde(rename = "C")]
    pub c: String,
    pub iota: String,
    pub pi: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsorSpec {
    pub bimodule: String,
    pub g_action: Vec<Vec<usize>>,
    pub a_action: Vec<Vec<usize>>,
    pub f: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureError {
    Io(String),
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    Reference {
        object: String,
        missing: String,
        kind: &'static str,
    },
    Duplicate(String),
    Validation {
        object: String,
        error: Error,
    },
}

impl fmt::Display for FixtureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureError::Io(m) => write!(f, "cannot read fixture: {m}"),
            FixtureError::Parse {
                line,
                column,
                message,
            } => write!(f, "parse error at line {line}, column {column}: {message}"),
            FixtureError::Reference {
                object,
                missing,
                kind,
            } => write!(f, "{object}: undefined {kind} \"{missing}\""),
            FixtureError::Duplicate(name) => write!(f, "name \"{name}\" is defined more than once"),
            FixtureError::Validation { object, error } => write!(f, "{object}: {error}"),
        }
    }
}

/// Every problem found while loading, in document order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadErrors(pub Vec<FixtureError>);

impl fmt::Display for LoadErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadErrors {}

#[derive(Clone, Debug)]
pub struct BimoduleEntry {
    pub bimodule: Bimodule,
    pub normal_subgroup: Option<Vec<usize>>,
    pub retraction: Option<GroupMap>,
}

#[derive(Clone, Debug)]
pub struct TorsorEntry {
    pub bimodule: String,
    pub torsor: Torsor,
}

/// A fully resolved and validated fixture.
#[derive(Clone, Debug)]
pub struct FixtureDocument {
    /// Canonical form, as emitted.
    pub file: FixtureFile,
    pub groups: BTreeMap<String, GroupRef>,
    pub actions: BTreeMap<String, GroupAction>,
    pub maps: BTreeMap<String, GroupMap>,
    pub bimodules: BTreeMap<String, BimoduleEntry>,
    pub extensions: BTreeMap<String, BimoduleExtension>,
    pub torsors: BTreeMap<String, TorsorEntry>,
}

impl FixtureDocument {
    pub fn kind_of(&self, name: &str) -> Option<&'static str> {
        if self.groups.contains_key(name) {
            Some("group")
        } else if self.actions.contains_key(name) {
            Some("action")
        } else if self.maps.contains_key(name) {
            Some("map")
        } else if self.bimodules.contains_key(name) {
            Some("bimodule")
        } else if self.extensions.contains_key(name) {
            Some("extension")
        } else if self.torsors.contains_key(name) {
            Some("torsor")
        } else {
            None
        }
    }

    /// Pretty JSON of the canonical form.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.file).expect("fixture serializes");
        s.push('\n');
        s
    }
}

pub fn load_fixture(path: impl AsRef<Path>) -> Result<FixtureDocument, LoadErrors> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| {
        LoadErrors(vec![FixtureError::Io(format!(
            "{}: {e}",
            path.as_ref().display()
        ))])
    })?;
    parse_fixture(&text)
}

pub fn parse_fixture(text: &str) -> Result<FixtureDocument, LoadErrors> {
    let file: FixtureFile = serde_json::from_str(text).map_err(|e| {
        LoadErrors(vec![FixtureError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }])
    })?;
    resolve(file)
}

/// Validates an in-memory file, translating it to canonical labels.
pub fn resolve(file: FixtureFile) -> Result<FixtureDocument, LoadErrors> {
    Resolver::default().run(file)
}

#[derive(Default)]
struct Resolver {
    errors: Vec<FixtureError>,
    out: FixtureFile,
    groups: BTreeMap<String, GroupRef>,
    actions: BTreeMap<String, GroupAction>,
    maps: BTreeMap<String, GroupMap>,
    bimodules: BTreeMap<String, BimoduleEntry>,
    extensions: BTreeMap<String, BimoduleExtension>,
    torsors: BTreeMap<String, TorsorEntry>,
    // names whose definition failed; references to them are not reported again
    broken: BTreeSet<String>,
}

fn relabel(g: &FiniteTopGroup, raw: usize) -> Result<usize, Error> {
    g.from_original(raw).ok_or(Error::IndexOutOfRange {
        index: raw,
        order: g.order(),
    })
}

fn relabel_table(
    rows: &FiniteTopGroup,
    cols: &FiniteTopGroup,
    vals: &FiniteTopGroup,
    raw: &[Vec<usize>],
) -> Result<Vec<Vec<usize>>, Error> {
    if raw.len() != rows.order() || raw.iter().any(|r| r.len() != cols.order()) {
        return Err(Error::MapShape {
            got: raw.iter().map(Vec::len).sum(),
            expected: rows.order() * cols.order(),
        });
    }
    rows.elements()
        .map(|x| {
            cols.elements()
                .map(|y| relabel(vals, raw[rows.original_label(x)][cols.original_label(y)]))
                .collect()
        })
        .collect()
}

fn relabel_list(
    dom: &FiniteTopGroup,
    cod: &FiniteTopGroup,
    raw: &[usize],
) -> Result<Vec<usize>, Error> {
    if raw.len() != dom.order() {
        return Err(Error::MapShape {
            got: raw.len(),
            expected: dom.order(),
        });
    }
    dom.elements()
        .map(|x| relabel(cod, raw[dom.original_label(x)]))
        .collect()
}

impl Resolver {
    fn run(mut self, file: FixtureFile) -> Result<FixtureDocument, LoadErrors> {
        let mut seen = BTreeSet::new();
        let names = file
            .groups
            .keys()
            .chain(file.actions.keys())
            .chain(file.maps.keys())
            .chain(file.bimodules.keys());
        for name in names
            .chain(file.extensions.keys())
            .chain(file.torsors.keys())
        {
            if !seen.insert(name.clone()) {
                self.errors.push(FixtureError::Duplicate(name.clone()));
            }
        }
        for (name, spec) in &file.groups {
            self.group(name, spec);
        }
        for (name, spec) in &file.actions {
            self.action(name, spec);
        }
        for (name, spec) in &file.maps {
            self.map(name, spec);
        }
        for (name, spec) in &file.bimodules {
            self.bimodule(name, spec);
        }
        for (name, spec) in &file.extensions {
            self.extension(name, spec);
        }
        for (name, spec) in &file.torsors {
            self.torsor(name, spec);
        }
        if !self.errors.is_empty() {
            return Err(LoadErrors(self.errors));
        }
        Ok(FixtureDocument {
            file: self.out,
            groups: self.groups,
            actions: self.actions,
            maps: self.maps,
            bimodules: self.bimodules,
            extensions: self.extensions,
            torsors: self.torsors,
        })
    }

    fn fail(&mut self, object: &str, error: Error) {
        self.broken.insert(object.to_string());
        self.errors.push(FixtureError::Validation {
            object: object.to_string(),
            error,
        });
    }

    fn lookup<T: Clone>(
        &mut self,
        object: &str,
        name: &str,
        kind: &'static str,
        table: fn(&Self) -> &BTreeMap<String, T>,
    ) -> Option<T> {
        if let Some(x) = table(self).get(name) {
            return Some(x.clone());
        }
        let err = FixtureError::Reference {
            object: object.to_string(),
            missing: name.to_string(),
            kind,
        };
        if !self.broken.contains(name) && !self.errors.contains(&err) {
            self.errors.push(err);
        }
        self.broken.insert(object.to_string());
        None
    }

    fn group_ref(&mut self, object: &str, name: &str) -> Option<GroupRef> {
        self.lookup(object, name, "group", |s| &s.groups)
    }

    fn group(&mut self, name: &str, spec: &GroupSpec) {
        if spec.cayley.len() != spec.order {
            return self.fail(
                name,
                Error::MapShape {
                    got: spec.cayley.len(),
                    expected: spec.order,
                },
            );
        }
        match validate_group(&spec.cayley, spec.identity, &spec.open_subgroup) {
            Ok(g) => {
                let mut open = g.open_subgroup().to_vec();
                open.sort_unstable();
                self.out.groups.insert(
                    name.into(),
                    GroupSpec {
                        order: g.order(),
                        cayley: g.cayley(),
                        open_subgroup: open,
                        identity: None,
                    },
                );
                self.groups.insert(name.into(), g.into_ref());
            }
            Err(e) => self.fail(name, e),
        }
    }

    fn action(&mut self, name: &str, spec: &ActionSpec) {
        let (Some(actor), Some(space)) = (
            self.group_ref(name, &spec.actor),
            self.group_ref(name, &spec.space),
        ) else {
            return;
        };
        let built = relabel_table(&actor, &space, &space, &spec.table)
            .and_then(|t| GroupAction::new(actor, space, t));
        match built {
            Ok(act) => {
                self.out.actions.insert(
                    name.into(),
                    ActionSpec {
                        table: act.table(),
                        ..spec.clone()
                    },
                );
                self.actions.insert(name.into(), act);
            }
            Err(e) => self.fail(name, e),
        }
    }

    fn map(&mut self, name: &str, spec: &MapSpec) {
        let (Some(dom), Some(cod)) = (
            self.group_ref(name, &spec.domain),
            self.group_ref(name, &spec.codomain),
        ) else {
            return;
        };
        let built = relabel_list(&dom, &cod, &spec.images)
            .and_then(|im| GroupMap::new(dom, cod, im, spec.homomorphism));
        match built {
            Ok(m) => {
                self.out.maps.insert(
                    name.into(),
                    MapSpec {
                        images: m.images().to_vec(),
                        ..spec.clone()
                    },
                );
                self.maps.insert(name.into(), m);
            }
            Err(e) => self.fail(name, e),
        }
    }

    fn bimodule(&mut self, name: &str, spec: &BimoduleSpec) {
        let g = self.group_ref(name, &spec.g);
        let r = self.group_ref(name, &spec.r);
        let a = self.group_ref(name, &spec.a);
        let mu = self.lookup(name, &spec.mu, "map", |s| &s.maps);
        let act_g_a = self.lookup(name, &spec.act_g_a, "action", |s| &s.actions);
        let act_g_r = self.lookup(name, &spec.act_g_r, "action", |s| &s.actions);
        let act_r_a = self.lookup(name, &spec.act_r_a, "action", |s| &s.actions);
        let retraction = match &spec.retraction {
            Some(m) => match self.lookup(name, m, "map", |s| &s.maps) {
                Some(m) => Some(m),
                None => return,
            },
            None => None,
        };
        let (Some(g), Some(r), Some(a), Some(mu), Some(act_g_a), Some(act_g_r), Some(act_r_a)) =
            (g, r, a, mu, act_g_a, act_g_r, act_r_a)
        else {
            return;
        };
        let normal = match &spec.normal_subgroup {
            Some(raw) => match raw
                .iter()
                .map(|&x| relabel(&g, x))
                .collect::<Result<Vec<_>, _>>()
                .and_then(|mut n| {
                    n.sort_unstable();
                    n.dedup();
                    g.check_normal(&n).map(|_| n)
                }) {
                Ok(n) => Some(n),
                Err(e) => return self.fail(name, e),
            },
            None => None,
        };
        match Bimodule::new(BimoduleData {
            g,
            r,
            a,
            mu,
            act_g_a,
            act_g_r,
            act_r_a,
        }) {
            Ok(bimodule) => {
                self.out.bimodules.insert(
                    name.into(),
                    BimoduleSpec {
                        normal_subgroup: normal.clone(),
                        ..spec.clone()
                    },
                );
                self.bimodules.insert(
                    name.into(),
                    BimoduleEntry {
                        bimodule,
                        normal_subgroup: normal,
                        retraction,
                    },
                );
            }
            Err(e) => self.fail(name, e),
        }
    }

    fn extension(&mut self, name: &str, spec: &ExtensionSpec) {
        let a = self.lookup(name, &spec.a, "bimodule", |s| &s.bimodules);
        let b = self.lookup(name, &spec.b, "bimodule", |s| &s.bimodules);
        let c = self.lookup(name, &spec.c, "bimodule", |s| &s.bimodules);
        let iota = self.lookup(name, &spec.iota, "map", |s| &s.maps);
        let pi = self.lookup(name, &spec.pi, "map", |s| &s.maps);
        let section = match &spec.section {
            Some(m) => match self.lookup(name, m, "map", |s| &s.maps) {
                Some(m) => Some(m),
                None => return,
            },
            None => None,
        };
        let (Some(a), Some(b), Some(c), Some(iota), Some(pi)) = (a, b, c, iota, pi) else {
            return;
        };
        match BimoduleExtension::new(
            a.bimodule,
            b.bimodule,
            c.bimodule,
            iota,
            pi,
            section,
            &SearchOptions::default(),
        ) {
            Ok(e) => {
                self.out.extensions.insert(name.into(), spec.clone());
                self.extensions.insert(name.into(), e);
            }
            Err(e) => self.fail(name, e),
        }
    }

    fn torsor(&mut self, name: &str, spec: &TorsorSpec) {
        let Some(entry) = self.lookup(name, &spec.bimodule, "bimodule", |s| &s.bimodules) else {
            return;
        };
        let b = &entry.bimodule;
        let n = b.a.order();
        let built = (|| {
            // points of P are plain indices; only G, A and R labels move
            if spec.g_action.len() != b.g.order() || spec.a_action.len() != n || spec.f.len() != n {
                return Err(Error::InvalidTorsor(format!(
                    "tables must describe {n} points"
                )));
            }
            let g_action =
                b.g.elements()
                    .map(|x| spec.g_action[b.g.original_label(x)].clone())
                    .collect::<Vec<_>>();
            let a_action = spec
                .a_action
                .iter()
                .map(|row| {
                    if row.len() != n {
                        return Err(Error::InvalidTorsor(
                            "a_action rows must have |A| entries".into(),
                        ));
                    }
                    Ok(b.a.elements().map(|y| row[b.a.original_label(y)]).collect())
                })
                .collect::<Result<Vec<Vec<usize>>, Error>>()?;
            let f = spec
                .f
                .iter()
                .map(|&r| relabel(&b.r, r))
                .collect::<Result<Vec<_>, _>>()?;
            Torsor::new(b, g_action, a_action, f)
        })();
        match built {
            Ok(torsor) => {
                self.out.torsors.insert(
                    name.into(),
                    TorsorSpec {
                        bimodule: spec.bimodule.clone(),
                        g_action: torsor.g_action.clone(),
                        a_action: torsor.a_action.clone(),
                        f: torsor.f.clone(),
                    },
                );
                self.torsors.insert(
                    name.into(),
                    TorsorEntry {
                        bimodule: spec.bimodule.clone(),
                        torsor,
                    },
                );
            }
            Err(e) => self.fail(name, e),
        }
    }
}

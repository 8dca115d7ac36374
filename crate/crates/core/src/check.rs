//! Outcome of an exhaustive property check, with a witness on failure.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// How many cases were examined.
    pub cases: u64,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, cases: u64) -> Self {
        Check {
            name: name.into(),
            passed: true,
            cases,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, cases: u64, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            cases,
            witness: Some(witness.into()),
        }
    }

    /// Runs `cases` and reports the first failing case.
    pub fn over<I, T>(
        name: impl Into<String>,
        cases: I,
        mut ok: impl FnMut(&T) -> bool,
        show: impl Fn(&T) -> String,
    ) -> Self
    where
        I: IntoIterator<Item = T>,
    {
        let mut n = 0;
        for case in cases {
            n += 1;
            if !ok(&case) {
                return Check::fail(name, n, show(&case));
            }
        }
        Check::pass(name, n)
    }
}

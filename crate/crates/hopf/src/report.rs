/// Named checks, each with its first failure.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<(String, Option<String>)>,
}

impl Report {
    pub fn push(&mut self, name: &str, failure: Option<String>) {
        self.checks.push((name.to_string(), failure));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, f)| f.is_none())
    }

    pub fn failure(&self, name: &str) -> Option<&str> {
        self.checks.iter().find(|(n, _)| n == name).and_then(|(_, f)| f.as_deref())
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|(n, f)| match f {
                None => format!("PASS {n}"),
                Some(e) => format!("FAIL {n}: {e}"),
            })
            .collect()
    }

    pub fn merge(&mut self, prefix: &str, o: Report) {
        for (n, f) in o.checks {
            self.checks.push((format!("{prefix}{n}"), f));
        }
    }
}

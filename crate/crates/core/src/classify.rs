//! Naming-convention groups: `-Utils` classes, `-Er`/`-Or` classes, the rest.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{AuditError, Result};

pub const DEFAULT_UTILS_SUFFIXES: [&str; 4] = ["Utils", "Util", "Utilities", "Utility"];

pub const ER_OR_SUFFIXES: [&str; 2] = ["er", "or"];

/// Agent-noun lookalikes that do not name a functor.
pub const DEFAULT_EXCLUSION_SUFFIXES: [&str; 41] = [
    "Inner",
    "Actor",
    "Logger",
    "Member",
    "Order",
    "Parameter",
    "Error",
    "Calculator",
    "Vector",
    "Computer",
    "Customer",
    "Trigger",
    "Cluster",
    "Cipher",
    "Cursor",
    "Number",
    "Owner",
    "Meter",
    "Letter",
    "Answer",
    "Author",
    "Folder",
    "Other",
    "Cashier",
    "Broker",
    "Motor",
    "Mirror",
    "Spider",
    "Color",
    "Center",
    "Layer",
    "Never",
    "Browser",
    "Either",
    "Tensor",
    "Cylinder",
    "Meteor",
    "Flower",
    "Banner",
    "Chapter",
    "Developer",
];

/// The three groups under study, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StudyGroup {
    ErOr,
    Utils,
    Rest,
}

impl StudyGroup {
    pub const ALL: [StudyGroup; 3] = [StudyGroup::ErOr, StudyGroup::Utils, StudyGroup::Rest];

    pub fn as_str(self) -> &'static str {
        match self {
            StudyGroup::ErOr => "ErOr",
            StudyGroup::Utils => "Utils",
            StudyGroup::Rest => "Rest",
        }
    }
}

impl fmt::Display for StudyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DropReason {
    /// A would-be Rest class declaring static methods or attributes.
    StaticMember,
    /// An `-er`/`-or` name on the exclusion list, under [`ExcludedPolicy::Drop`].
    ExcludedSuffix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GroupLabel {
    Utils,
    ErOr,
    Rest,
    Dropped(DropReason),
}

impl GroupLabel {
    pub fn group(self) -> Option<StudyGroup> {
        match self {
            GroupLabel::Utils => Some(StudyGroup::Utils),
            GroupLabel::ErOr => Some(StudyGroup::ErOr),
            GroupLabel::Rest => Some(StudyGroup::Rest),
            GroupLabel::Dropped(_) => None,
        }
    }
}

/// Where names matching an exclusion suffix go.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub enum ExcludedPolicy {
    /// Treated like any other name: Rest, unless it has static members.
    #[default]
    Rest,
    Drop,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuffixRules {
    pub utils_suffixes: Vec<String>,
    pub exclusion_suffixes: Vec<String>,
    pub excluded_to: ExcludedPolicy,
}

impl Default for SuffixRules {
    fn default() -> Self {
        Self {
            utils_suffixes: DEFAULT_UTILS_SUFFIXES
                .iter()
                .map(|s| s.to_string())
                .collect(),
            exclusion_suffixes: DEFAULT_EXCLUSION_SUFFIXES
                .iter()
                .map(|s| s.to_string())
                .collect(),
            excluded_to: ExcludedPolicy::Rest,
        }
    }
}

impl SuffixRules {
    /// Parses a rules file: `[utils]` and `[exclude]` sections with one
    /// suffix per line. `#` starts a comment. A missing section keeps its
    /// default list.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rules = SuffixRules::default();
        let mut utils: Option<Vec<String>> = None;
        let mut exclude: Option<Vec<String>> = None;
        let mut section: Option<&str> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let name = name.trim();
                match name {
                    "utils" => utils = Some(utils.unwrap_or_default()),
                    "exclude" => exclude = Some(exclude.unwrap_or_default()),
                    other => {
                        return Err(AuditError::Config(format!(
                            "rules line {}: unknown section [{other}]",
                            idx + 1
                        )))
                    }
                }
                section = Some(if name == "utils" { "utils" } else { "exclude" });
                continue;
            }
            if line.chars().any(char::is_whitespace) {
                return Err(AuditError::Config(format!(
                    "rules line {}: `{line}` is not a single suffix",
                    idx + 1
                )));
            }
            let target = match section {
                Some("utils") => utils.as_mut(),
                Some(_) => exclude.as_mut(),
                None => {
                    return Err(AuditError::Config(format!(
                        "rules line {}: suffix outside of a section",
                        idx + 1
                    )))
                }
            };
            if let Some(list) = target {
                list.push(line.to_owned());
            }
        }

        if let Some(list) = utils {
            rules.utils_suffixes = list;
        }
        if let Some(list) = exclude {
            rules.exclusion_suffixes = list;
        }
        rules.validate()?;
        Ok(rules)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| AuditError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn with_excluded_to(mut self, policy: ExcludedPolicy) -> Self {
        self.excluded_to = policy;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.utils_suffixes.is_empty() {
            return Err(AuditError::Config("rules: [utils] is empty".into()));
        }
        if self.exclusion_suffixes.is_empty() {
            return Err(AuditError::Config("rules: [exclude] is empty".into()));
        }
        let mut seen = HashSet::new();
        for suffix in &self.exclusion_suffixes {
            if !seen.insert(suffix) {
                return Err(AuditError::Config(format!(
                    "rules: duplicate exclusion suffix `{suffix}`"
                )));
            }
        }
        Ok(())
    }
}

pub fn has_utils_suffix(name: &str, rules: &SuffixRules) -> bool {
    rules
        .utils_suffixes
        .iter()
        .any(|s| name.ends_with(s.as_str()))
}

/// A lowercase `er` / `or` tail with at least one character before it.
pub fn has_er_or_tail(name: &str) -> bool {
    ER_OR_SUFFIXES
        .iter()
        .any(|s| name.len() > s.len() && name.ends_with(s))
}

pub fn has_exclusion_suffix(name: &str, rules: &SuffixRules) -> bool {
    rules
        .exclusion_suffixes
        .iter()
        .any(|s| name.ends_with(s.as_str()))
}

/// Assigns a class to exactly one label. Precedence: Utils, then ErOr, then
/// the static-member filter, then Rest.
pub fn classify(name: &str, has_static_member: bool, rules: &SuffixRules) -> GroupLabel {
    if has_utils_suffix(name, rules) {
        return GroupLabel::Utils;
    }
    if has_er_or_tail(name) {
        if !has_exclusion_suffix(name, rules) {
            return GroupLabel::ErOr;
        }
        if rules.excluded_to == ExcludedPolicy::Drop {
            return GroupLabel::Dropped(DropReason::ExcludedSuffix);
        }
    }
    if has_static_member {
        GroupLabel::Dropped(DropReason::StaticMember)
    } else {
        GroupLabel::Rest
    }
}

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use walkdir::WalkDir;

use crate::classify::{classify, SuffixRules};
use crate::error::{AuditError, Result};
use crate::metrics::class_metrics;
use crate::source::parse_compilation_unit;

use super::record::{ClassRecord, MetricValues};

/// Records gathered from one input, plus what had to be skipped.
#[derive(Debug, Default)]
pub struct Ingest {
    pub records: Vec<ClassRecord>,
    /// Non-fatal per-input failures, in input order.
    pub skipped: Vec<AuditError>,
    /// Files (source mode) or data rows (CSV mode) examined.
    pub inputs_seen: usize,
    /// Distinct repositories seen, when the input identifies them.
    pub repositories: Option<usize>,
    pub warnings: Vec<String>,
}

fn java_files(root: &Path) -> Result<Vec<PathBuf>> {
    let meta = std::fs::metadata(root).map_err(|e| AuditError::io(root, e))?;
    if meta.is_file() {
        return Ok(vec![root.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in WalkDir::new(root).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(root).to_path_buf();
            let source = e
                .into_io_error()
                .unwrap_or_else(|| std::io::Error::other("filesystem loop"));
            AuditError::io(path, source)
        })?;
        if entry.file_type().is_file() && entry.path().extension().is_some_and(|x| x == "java") {
            files.push(entry.into_path());
        }
    }
    Ok(files)
}

fn ingest_file(path: &Path, repository: &str, rules: &SuffixRules) -> Result<Vec<ClassRecord>> {
    let bytes = std::fs::read(path).map_err(|e| AuditError::Parse {
        file: path.to_path_buf(),
        line: 0,
        message: format!("unreadable: {e}"),
    })?;
    let text = String::from_utf8(bytes).map_err(|e| {
        let valid = &e.as_bytes()[..e.utf8_error().valid_up_to()];
        AuditError::Parse {
            file: path.to_path_buf(),
            line: valid.iter().filter(|b| **b == b'\n').count() + 1,
            message: "not valid UTF-8".to_owned(),
        }
    })?;
    let classes = parse_compilation_unit(&text, path)?;
    Ok(classes
        .into_iter()
        .map(|class| {
            let metrics = class_metrics(&class);
            ClassRecord {
                label: classify(&class.name, class.has_static_member, rules),
                origin: path.display().to_string(),
                repository: Some(repository.to_owned()),
                metrics: MetricValues::from(&metrics),
                loc: class.loc as u64,
                blank_lines: class.blank_lines as u64,
                qualified_name: class.qualified_name,
            }
        })
        .collect())
}

/// Parses every `.java` file under `roots`, one root per repository.
///
/// Files are visited in sorted path order and parsed in parallel; the output
/// order does not depend on scheduling. A missing root is fatal, a file that
/// fails to parse is recorded in [`Ingest::skipped`].
pub fn ingest_sources(roots: &[PathBuf], rules: &SuffixRules) -> Result<Ingest> {
    let mut work = Vec::new();
    for root in roots {
        let repository = root.display().to_string();
        for file in java_files(root)? {
            work.push((file, repository.clone()));
        }
    }

    let results: Vec<Result<Vec<ClassRecord>>> = work
        .par_iter()
        .map(|(file, repo)| ingest_file(file, repo, rules))
        .collect();

    let mut ingest = Ingest {
        inputs_seen: work.len(),
        repositories: Some(roots.iter().collect::<BTreeSet<_>>().len()),
        ..Ingest::default()
    };
    for result in results {
        match result {
            Ok(records) => ingest.records.extend(records),
            Err(e) => ingest.skipped.push(e),
        }
    }
    Ok(ingest)
}

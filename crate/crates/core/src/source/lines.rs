use crate::error::{AuditError, Result};

use super::model::LineSpan;

/// Returns `(loc, blank_lines)` for `span` within `source`.
///
/// A blank line holds nothing but whitespace (spaces, tabs, a stray `\r`).
/// Comment-only lines are not blank.
pub fn count_loc_and_blank(source: &str, span: LineSpan) -> Result<(usize, usize)> {
    let available = source.lines().count();
    if span.first == 0 || span.first > span.last || span.last > available {
        return Err(AuditError::SpanOutOfBounds {
            first: span.first,
            last: span.last,
            available,
        });
    }
    let blank = source
        .lines()
        .skip(span.first - 1)
        .take(span.line_count())
        .filter(|line| line.trim().is_empty())
        .count();
    Ok((span.line_count(), blank))
}

use std::sync::OnceLock;

use crate::calculus::{LabelSet, Schema};

const PUBLISHED: &str = include_str!("../../resources/heuristic_predictions.txt");

/// One row of the published prediction table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PredictionRow {
    pub schema: Schema,
    pub atmosphere: LabelSet,
    pub matching: LabelSet,
    pub conversion: LabelSet,
    pub phm: LabelSet,
}

fn parse_rows(text: &str) -> Result<Vec<PredictionRow>, String> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('|').map(str::trim).collect();
        let err = |what: &str| format!("line {}: {what}", lineno + 1);
        if cols.len() != 5 {
            return Err(err("expected 5 columns"));
        }
        let labels = |i: usize| cols[i].parse::<LabelSet>().map_err(|e| err(&e.to_string()));
        rows.push(PredictionRow {
            schema: cols[0]
                .parse()
                .map_err(|e: crate::calculus::CalculusError| err(&e.to_string()))?,
            atmosphere: labels(1)?,
            matching: labels(2)?,
            conversion: labels(3)?,
            phm: labels(4)?,
        });
    }
    Ok(rows)
}

fn table() -> &'static [PredictionRow; Schema::COUNT] {
    static TABLE: OnceLock<[PredictionRow; Schema::COUNT]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let rows = parse_rows(PUBLISHED).expect("embedded prediction table parses");
        let mut slots: [Option<PredictionRow>; Schema::COUNT] = [None; Schema::COUNT];
        for row in rows {
            let slot = &mut slots[row.schema.index()];
            assert!(
                slot.is_none(),
                "duplicate prediction row for {}",
                row.schema
            );
            *slot = Some(row);
        }
        slots.map(|r| r.expect("prediction table covers every schema"))
    })
}

/// The published predictions of all four theories for one schema.
pub fn published_prediction(schema: Schema) -> PredictionRow {
    table()[schema.index()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_table_is_complete() {
        let rows = parse_rows(PUBLISHED).unwrap();
        assert_eq!(rows.len(), 64);
        for s in Schema::all() {
            assert_eq!(published_prediction(s).schema, s);
        }
    }

    #[test]
    fn malformed_rows_are_reported() {
        assert!(parse_rows("AA1 | Aac | Aac")
            .unwrap_err()
            .contains("line 1"));
        assert!(parse_rows("ZZ1 | Aac | Aac | Aac | Aac").is_err());
        assert!(parse_rows("AA1 | Aac | Aac | Xyz | Aac").is_err());
    }
}

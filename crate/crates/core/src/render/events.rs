use serde::Serialize;

use crate::grammar::{Derivation, SymbolKind};

/// One structural event per non-linebreak token. Events carry position and
/// symbol only; pitch, duration and the like belong to whoever consumes them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Event {
    pub row: usize,
    pub pos: usize,
    pub symbol: String,
    pub kind: SymbolKind,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EventStream {
    pub events: Vec<Event>,
}

impl EventStream {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// `{"row":0,"pos":0,"symbol":"s1","kind":"state-terminal"}` per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("events serialize"));
            out.push('\n');
        }
        out
    }
}

/// Rows and positions are zero-based; events come in (row, position) order.
pub fn emit_events(derivation: &Derivation) -> EventStream {
    let events = derivation
        .rows()
        .into_iter()
        .enumerate()
        .flat_map(|(row, tokens)| {
            tokens.iter().enumerate().map(move |(pos, t)| Event {
                row,
                pos,
                symbol: t.name.clone(),
                kind: t.kind,
            })
        })
        .collect();
    EventStream { events }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{compile_grammar, derive};
    use crate::logic::PartitionLogic;

    #[test]
    fn json_lines() {
        let logic = PartitionLogic::from_named_contexts("g", &[vec!["x", "y"]]).unwrap();
        let states = logic.enumerate_states();
        let d = derive(&compile_grammar(&logic, &states).unwrap()).unwrap();
        let stream = emit_events(&d);
        assert_eq!(stream.len(), 6);
        let lines: Vec<_> = stream.to_json_lines().lines().map(String::from).collect();
        assert_eq!(
            lines[0],
            r#"{"row":0,"pos":0,"symbol":"s1","kind":"state-terminal"}"#
        );
        assert_eq!(
            lines[1],
            r#"{"row":0,"pos":1,"symbol":"br","kind":"separator"}"#
        );
        assert_eq!(
            lines[5],
            r#"{"row":1,"pos":2,"symbol":"s1","kind":"state-terminal"}"#
        );
        assert!(stream
            .events
            .iter()
            .all(|e| e.kind != SymbolKind::Linebreak));
    }
}

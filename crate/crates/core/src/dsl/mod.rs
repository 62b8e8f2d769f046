//! The `.qnet` circuit format.
//!
//! ```text
//! modes a:2 b:1
//! sq a1 b1 eta=0.4            # two-mode squeezer, complex η
//! bs a2 a1 theta=pi/2 phi=pi  # beamsplitter
//! ```
//!
//! Modes are numbered from 1 on each side. `eta` takes `x`, `x+yi` or `x-yi`;
//! angles take a float, `pi`, `x*pi` or `pi/n`. `#` starts a comment.

mod parse;
mod render;

pub use self::parse::{parse, parse_bytes, ParseError, ParseErrorKind, ParsedCircuit, SourceSpan};
pub use self::render::render;

use crate::network::classify;

/// A non-fatal finding about a parsed circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub message: String,
    pub span: SourceSpan,
}

pub const NOT_REDUCIBLE: &str = "network is not pseudo-squeezer-reducible";

/// Checks that need the whole network, currently only reducibility.
pub fn validate(circuit: &ParsedCircuit) -> Vec<Warning> {
    match classify(&circuit.spec) {
        Ok(_) => Vec::new(),
        Err(obstruction) => {
            let span = obstruction.element.map_or(circuit.modes_span, |k| circuit.element_spans[k]);
            vec![Warning { message: format!("{NOT_REDUCIBLE}: {obstruction}"), span }]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn warns_on_second_squeezer() {
        let text = "modes a:2 b:1\nsq a1 b1 eta=0.4\nbs a2 a1 theta=pi/2 phi=pi\nsq a2 b1 eta=0.0+0.3i\n";
        let warnings = validate(&parse(text).unwrap());
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].message.starts_with(NOT_REDUCIBLE));
        assert_eq!(warnings[0].span.line, 4);
    }

    #[test]
    fn reducible_is_quiet() {
        let text = "modes a:2 b:1\nsq a1 b1 eta=0.4\nbs a2 a1 theta=pi/2 phi=pi\n";
        assert!(validate(&parse(text).unwrap()).is_empty());
    }

    #[test]
    fn no_squeezer_points_at_modes_line() {
        let warnings = validate(&parse("\nmodes a:1 b:1\n").unwrap());
        assert_eq!(warnings[0].span, SourceSpan { line: 2, start: 1, end: 13 });
    }
}

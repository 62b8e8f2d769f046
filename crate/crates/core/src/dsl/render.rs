use std::f64::consts::PI;
use std::fmt::Write;

use num_complex::Complex64;

use crate::network::{ElementKind, NetworkSpec};

/// Shortest text that parses back to exactly `x`.
fn float(x: f64) -> String {
    format!("{x:?}")
}

fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        float(z.re)
    } else if z.im.is_sign_negative() {
        format!("{}-{}i", float(z.re), float(-z.im))
    } else {
        format!("{}+{}i", float(z.re), float(z.im))
    }
}

/// Symbolic forms for multiples and simple fractions of π, when they
/// reproduce the value bit for bit.
fn angle(x: f64) -> String {
    if x == PI {
        return "pi".into();
    }
    if let Some(n) = (2..=64u32).find(|&n| x == PI / n as f64) {
        return format!("pi/{n}");
    }
    if let Some(k) = [-8i32, -7, -6, -5, -4, -3, -2, -1, 2, 3, 4, 5, 6, 7, 8].into_iter().find(|&k| x == k as f64 * PI)
    {
        return format!("{k}*pi");
    }
    float(x)
}

/// Canonical text for `spec`: one `modes` line, then one line per element.
pub fn render(spec: &NetworkSpec) -> String {
    let mut out = format!("modes a:{} b:{}\n", spec.num_a_modes(), spec.num_b_modes());
    for e in spec.elements() {
        let (p, q) = e.modes;
        match e.kind {
            ElementKind::Squeezer { eta } => writeln!(out, "sq {p} {q} eta={}", complex(eta)),
            ElementKind::Beamsplitter { theta, phi } => {
                writeln!(out, "bs {p} {q} theta={} phi={}", angle(theta), angle(phi))
            }
        }
        .expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse;
    use crate::network::{Element, Mode};
    use proptest::prelude::*;

    #[test]
    fn canonical_primitive() {
        let spec = NetworkSpec::three_mode_primitive(Complex64::new(0.4, 0.0));
        assert_eq!(render(&spec), "modes a:2 b:1\nsq a1 b1 eta=0.4\nbs a2 a1 theta=pi/2 phi=pi\n");
        let chain = NetworkSpec::multimode_chain(1, 2, Complex64::new(0.0, -0.25)).unwrap();
        assert_eq!(render(&chain), "modes a:1 b:2\nsq a1 b1 eta=0.0-0.25i\nbs b2 b1 theta=pi/2 phi=-1*pi\n");
    }

    #[test]
    fn angles_round_trip() {
        for x in [PI, -PI, PI / 3.0, 2.0 * PI, 0.1, -0.0, 1e-300, 1e300, PI / 64.0] {
            assert_eq!(crate::dsl::parse::parse_angle(&angle(x)), Some(x), "{x}");
        }
    }

    fn finite() -> impl Strategy<Value = f64> {
        prop_oneof![
            any::<f64>().prop_filter("finite", |x| x.is_finite()),
            -10.0f64..10.0,
            Just(PI),
            Just(-PI),
            Just(PI / 2.0),
        ]
    }

    fn spec_strategy() -> impl Strategy<Value = NetworkSpec> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, s)| {
            let mode = prop_oneof![(0..r).prop_map(Mode::A), (0..s).prop_map(Mode::B)];
            let element = (mode.clone(), mode, finite(), finite(), any::<bool>())
                .prop_filter("distinct modes", |(p, q, ..)| p != q)
                .prop_map(|(p, q, x, y, sq)| {
                    if sq {
                        Element::squeezer(p, q, Complex64::new(x, y))
                    } else {
                        Element::beamsplitter(p, q, x, y)
                    }
                });
            prop::collection::vec(element, 0..8).prop_map(move |els| NetworkSpec::new(r, s, els).unwrap())
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_render(spec in spec_strategy()) {
            let text = render(&spec);
            let parsed = parse(&text).map_err(|e| TestCaseError::fail(format!("{e:?}\n{text}")))?;
            prop_assert_eq!(parsed.spec, spec);
        }
    }
}

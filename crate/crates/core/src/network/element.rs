use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{annihilation, creation, FockSpace, LinearOperator};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// An upper (`a`) or lower (`b`) mode, 0-based within its side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    A(usize),
    B(usize),
}

impl Mode {
    pub fn is_a(self) -> bool {
        matches!(self, Mode::A(_))
    }

    pub fn index(self) -> usize {
        match self {
            Mode::A(i) | Mode::B(i) => i,
        }
    }

    pub fn same_side(self, other: Mode) -> bool {
        self.is_a() == other.is_a()
    }
}

/// 1-based, as in circuit files: `a1`, `b2`, …
impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::A(i) => write!(f, "a{}", i + 1),
            Mode::B(i) => write!(f, "b{}", i + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ElementKind {
    /// `exp[θ(â_i†â_j e^{iφ} − â_iâ_j† e^{−iφ})/2]`
    Beamsplitter { theta: f64, phi: f64 },
    /// `exp[−i(η â_iâ_j + η* â_i†â_j†)/2]`
    Squeezer { eta: Complex64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Element {
    pub kind: ElementKind,
    pub modes: (Mode, Mode),
}

impl Element {
    pub fn beamsplitter(first: Mode, second: Mode, theta: f64, phi: f64) -> Self {
        Element { kind: ElementKind::Beamsplitter { theta, phi }, modes: (first, second) }
    }

    pub fn squeezer(first: Mode, second: Mode, eta: Complex64) -> Self {
        Element { kind: ElementKind::Squeezer { eta }, modes: (first, second) }
    }

    /// `B̂⁺ = B̂(π/2, π)`
    pub fn b_plus(first: Mode, second: Mode) -> Self {
        Self::beamsplitter(first, second, std::f64::consts::FRAC_PI_2, std::f64::consts::PI)
    }

    /// `B̂⁻ = B̂(π/2, −π)`
    pub fn b_minus(first: Mode, second: Mode) -> Self {
        Self::beamsplitter(first, second, std::f64::consts::FRAC_PI_2, -std::f64::consts::PI)
    }

    pub fn is_squeezer(&self) -> bool {
        matches!(self.kind, ElementKind::Squeezer { .. })
    }

    /// Whether the two modes sit on different sides.
    pub fn crosses_sides(&self) -> bool {
        !self.modes.0.same_side(self.modes.1)
    }

    fn check_parameters(&self) -> Result<()> {
        let finite = match self.kind {
            ElementKind::Beamsplitter { theta, phi } => theta.is_finite() && phi.is_finite(),
            ElementKind::Squeezer { eta } => eta.re.is_finite() && eta.im.is_finite(),
        };
        if !finite {
            return Err(Error::InvalidArgument(format!("non-finite parameter on element {self:?}")));
        }
        if self.modes.0 == self.modes.1 {
            return Err(Error::InvalidArgument(format!("element acts twice on mode {}", self.modes.0)));
        }
        Ok(())
    }
}

/// An ordered optical network on `r` upper and `s` lower modes. Elements act
/// in the listed order, so the compiled unitary is `U_n ⋯ U_2 U_1`.
///
/// On Fock space the upper modes come first: `a_i` is mode `i` and `b_j` is
/// mode `r + j`.
#[derive(Clone, Debug, PartialEq)]
pub struct NetworkSpec {
    num_a_modes: usize,
    num_b_modes: usize,
    elements: Vec<Element>,
}

impl NetworkSpec {
    pub fn new(num_a_modes: usize, num_b_modes: usize, elements: Vec<Element>) -> Result<Self> {
        if num_a_modes == 0 || num_b_modes == 0 {
            return Err(Error::InvalidArgument("a network needs at least one a mode and one b mode".into()));
        }
        let mut spec = NetworkSpec { num_a_modes, num_b_modes, elements: Vec::with_capacity(elements.len()) };
        for e in elements {
            spec.push(e)?;
        }
        Ok(spec)
    }

    pub fn push(&mut self, element: Element) -> Result<()> {
        element.check_parameters()?;
        for m in [element.modes.0, element.modes.1] {
            let (limit, side) = if m.is_a() { (self.num_a_modes, "a") } else { (self.num_b_modes, "b") };
            if m.index() >= limit {
                return Err(Error::InvalidArgument(format!(
                    "mode {m} out of range: the network has {limit} {side} modes"
                )));
            }
        }
        self.elements.push(element);
        Ok(())
    }

    /// The bare two-mode squeezer `Ŝ_{a1b1}(η)` followed by `B̂⁺` chains on
    /// the upper modes (`a2a1`, `a3a2`, …) and `B̂⁻` chains on the lower ones.
    pub fn multimode_chain(r: usize, s: usize, eta: Complex64) -> Result<Self> {
        let mut elements = vec![Element::squeezer(Mode::A(0), Mode::B(0), eta)];
        elements.extend((1..r).map(|l| Element::b_plus(Mode::A(l), Mode::A(l - 1))));
        elements.extend((1..s).map(|l| Element::b_minus(Mode::B(l), Mode::B(l - 1))));
        Self::new(r, s, elements)
    }

    /// `Ŝ_{a1b1}(squeeze)` then `B̂⁺_{a2a1}`.
    pub fn three_mode_primitive(squeeze: Complex64) -> Self {
        Self::new(
            2,
            1,
            vec![Element::squeezer(Mode::A(0), Mode::B(0), squeeze), Element::b_plus(Mode::A(1), Mode::A(0))],
        )
        .expect("fixed valid layout")
    }

    pub fn num_a_modes(&self) -> usize {
        self.num_a_modes
    }

    pub fn num_b_modes(&self) -> usize {
        self.num_b_modes
    }

    pub fn num_modes(&self) -> usize {
        self.num_a_modes + self.num_b_modes
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn fock_index(&self, mode: Mode) -> usize {
        match mode {
            Mode::A(i) => i,
            Mode::B(j) => self.num_a_modes + j,
        }
    }

    pub fn a_fock_modes(&self) -> Vec<usize> {
        (0..self.num_a_modes).collect()
    }

    pub fn b_fock_modes(&self) -> Vec<usize> {
        (self.num_a_modes..self.num_modes()).collect()
    }

    pub(crate) fn check_space(&self, space: &FockSpace) -> Result<()> {
        if space.num_modes() != self.num_modes() {
            return Err(Error::InvalidArgument(format!(
                "network has {} modes but the space has {}",
                self.num_modes(),
                space.num_modes()
            )));
        }
        Ok(())
    }

    /// Anti-Hermitian generator of element `index` on `space`.
    pub fn element_generator(&self, space: &Arc<FockSpace>, index: usize) -> Result<LinearOperator> {
        self.check_space(space)?;
        let e = self.elements.get(index).ok_or_else(|| Error::InvalidArgument(format!("no element {index}")))?;
        let (i, j) = (self.fock_index(e.modes.0), self.fock_index(e.modes.1));
        match e.kind {
            ElementKind::Beamsplitter { theta, phi } => beamsplitter_generator(space, theta, phi, i, j),
            ElementKind::Squeezer { eta } => squeezer_generator(space, eta, i, j),
        }
    }
}

/// `θ(â_i†â_j e^{iφ} − â_iâ_j† e^{−iφ})/2`.
pub fn beamsplitter_generator(
    space: &Arc<FockSpace>,
    theta: f64,
    phi: f64,
    mode_i: usize,
    mode_j: usize,
) -> Result<LinearOperator> {
    if mode_i == mode_j {
        return Err(Error::InvalidArgument(format!("beamsplitter needs distinct modes, got {mode_i} twice")));
    }
    let hop = creation(space, mode_i)?.try_mul(&annihilation(space, mode_j)?)?;
    let phase = Complex64::from_polar(theta / 2.0, phi);
    let forward = hop.scaled(phase);
    Ok(forward.try_sub(&forward.adjoint())?.with_hermitian_hint(false))
}

/// `−i(η â_iâ_j + η* â_i†â_j†)/2`.
pub fn squeezer_generator(
    space: &Arc<FockSpace>,
    eta: Complex64,
    mode_i: usize,
    mode_j: usize,
) -> Result<LinearOperator> {
    if mode_i == mode_j {
        return Err(Error::InvalidArgument(format!("two-mode squeezer needs distinct modes, got {mode_i} twice")));
    }
    let pair = annihilation(space, mode_i)?.try_mul(&annihilation(space, mode_j)?)?;
    let lower = pair.scaled(-I * eta / 2.0);
    // the creation term is minus the adjoint of the annihilation term
    lower.try_sub(&lower.adjoint())
}

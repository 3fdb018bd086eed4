use num_complex::Complex64;

use crate::dirac_numeric::Matrix4c;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    A,
    B,
    C,
    D,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::A, Level::B, Level::C, Level::D];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Ordered pair of distinct levels. The first-named level is the upper
/// state: σ_z is +1 on it and σ⁺ = |first⟩⟨second|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelPair {
    first: Level,
    second: Level,
}

impl LevelPair {
    pub const AB: LevelPair = LevelPair {
        first: Level::A,
        second: Level::B,
    };
    pub const AC: LevelPair = LevelPair {
        first: Level::A,
        second: Level::C,
    };
    pub const AD: LevelPair = LevelPair {
        first: Level::A,
        second: Level::D,
    };
    pub const BC: LevelPair = LevelPair {
        first: Level::B,
        second: Level::C,
    };
    pub const BD: LevelPair = LevelPair {
        first: Level::B,
        second: Level::D,
    };
    pub const CD: LevelPair = LevelPair {
        first: Level::C,
        second: Level::D,
    };

    pub fn new(first: Level, second: Level) -> Result<Self> {
        if first == second {
            return Err(Error::Invalid(format!(
                "level pair needs two distinct levels, got {first:?} twice"
            )));
        }
        Ok(LevelPair { first, second })
    }

    pub fn first(&self) -> Level {
        self.first
    }

    pub fn second(&self) -> Level {
        self.second
    }

    /// σ⁺ = |first⟩⟨second|
    pub fn raising(&self) -> Matrix4c {
        let mut m = Matrix4c::zeros();
        m[(self.first.index(), self.second.index())] = Complex64::new(1.0, 0.0);
        m
    }

    /// σ⁻ = |second⟩⟨first|
    pub fn lowering(&self) -> Matrix4c {
        self.raising().transpose()
    }
}

/// σ_axis acting on the two levels of `pair`, zero elsewhere.
pub fn pauli_pair(pair: LevelPair, axis: Axis) -> Matrix4c {
    let up = pair.raising();
    let down = pair.lowering();
    let i = Complex64::i();
    match axis {
        Axis::X => up + down,
        Axis::Y => up * (-i) + down * i,
        Axis::Z => {
            let mut m = Matrix4c::zeros();
            m[(pair.first.index(), pair.first.index())] = Complex64::new(1.0, 0.0);
            m[(pair.second.index(), pair.second.index())] = Complex64::new(-1.0, 0.0);
            m
        }
    }
}

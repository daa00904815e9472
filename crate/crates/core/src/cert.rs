//! Certificate data model shared by the builder and the checker.
//!
//! A [`SplitCertificate`] claims that a given `R`-linear map
//! `rho: T -> R` with `rho(1) = 1` kills a prime of `T` containing `J`, and
//! hence induces a splitting of `R ⊂ T/J`. Everything needed to confirm the
//! claim by plain arithmetic is carried along: witnesses, prime generators,
//! the evaluation map whose kernel is the prime, ideal-membership cofactors
//! for every generator of `J` and a set of named polynomial identities.

use std::fmt;

use crate::poly::{Algebra, BiPoly, MonicQuadratic, Var};
use crate::quotient::{Presentation, QuadModElement, QuadModRing};
use crate::ufd::{Ring, RingDescriptor, Ufd};

/// Default seed for the randomized linearity probes.
pub const DEFAULT_PROBE_SEED: u64 = 20_251_017;

/// `S = R[x,y]/(f1(x), f2(y), J)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtensionProblem<R: Ufd> {
    pub ctx: R::Ctx,
    pub f1: MonicQuadratic<R>,
    pub f2: MonicQuadratic<R>,
    pub j: Vec<BiPoly<R>>,
}

impl<R: Ufd> ExtensionProblem<R> {
    pub fn new(ctx: R::Ctx, f1: MonicQuadratic<R>, f2: MonicQuadratic<R>, j: Vec<BiPoly<R>>) -> Self {
        ExtensionProblem { ctx, f1, f2, j }
    }

    pub fn descriptor(&self) -> RingDescriptor {
        R::descriptor(&self.ctx)
    }

    pub fn presentation(&self) -> Presentation<R> {
        Presentation::new(self.f1.clone(), self.f2.clone())
    }
}

/// Which of the two quadratics plays the role of the base extension in the
/// nonradical case.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Orientation {
    /// Target `R[z]/(f1)`, `x̄ -> z̄`, `ȳ` eliminated.
    Standard,
    /// Target `R[z]/(f2)`, `ȳ -> z̄`, `x̄` eliminated.
    Swapped,
}

impl Orientation {
    /// The variable that is eliminated by the linear generator.
    pub fn eliminated(self) -> Var {
        match self {
            Orientation::Standard => Var::Y,
            Orientation::Swapped => Var::X,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseTag {
    /// `J ⊂ I`; `T/J = T` is free and `rho` is the first coordinate.
    Free,
    /// One of the quadratics has roots in `R`; `index` selects the prime.
    Reducible { index: usize },
    /// `f1 = x^2 - d^2 u`, `f2 = y^2 - c^2 u`; prime `P_r`.
    Radical { r: u8 },
    /// Both linear coefficients are divisible by 2; radical after a shift.
    CompletedSquare { r: u8 },
    /// `Z` with a square-free discriminant; prime `P_j`, `j ∈ {1, 2}`.
    Nonradical { j: u8 },
}

impl CaseTag {
    pub fn name(&self) -> &'static str {
        match self {
            CaseTag::Free => "free",
            CaseTag::Reducible { .. } => "reducible",
            CaseTag::Radical { .. } => "radical",
            CaseTag::CompletedSquare { .. } => "completed-square",
            CaseTag::Nonradical { .. } => "nonradical",
        }
    }

    /// Prime index in the certificate's `minimal_primes` list numbering.
    pub fn index(&self) -> Option<usize> {
        match *self {
            CaseTag::Free => None,
            CaseTag::Reducible { index } => Some(index),
            CaseTag::Radical { r } | CaseTag::CompletedSquare { r } => Some(r as usize),
            CaseTag::Nonradical { j } => Some(j as usize),
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            None => f.write_str(self.name()),
            Some(i) => write!(f, "{}({})", self.name(), i),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witnesses<R: Ufd> {
    None,
    /// Both roots of each split quadratic, `(a + sqrt(disc))/2` first. An
    /// empty list means the quadratic is irreducible.
    Roots {
        x_roots: Vec<R>,
        y_roots: Vec<R>,
    },
    Radical {
        c: R,
        d: R,
        u: R,
    },
    /// `x = X + half_a`, `y = Y + half_c` turns the quadratics into
    /// `X^2 - d^2 u` and `Y^2 - c^2 u`.
    CompletedSquare {
        half_a: R,
        half_c: R,
        c: R,
        d: R,
        u: R,
    },
    /// `e^2 (a^2 - 4b) = c^2 - 4d` for the base quadratic `x^2 - a x + b`
    /// and the other one `y^2 - c y + d`; `half_minus = (c - a e)/2`,
    /// `half_plus = (c + a e)/2`.
    Nonradical {
        orientation: Orientation,
        e: R,
        half_minus: R,
        half_plus: R,
    },
}

/// Evaluation map `T -> R[z]/(m)` (or `T -> R` when `modulus` is absent)
/// whose kernel is the prime.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EliminationMap<R: Ring> {
    pub modulus: Option<MonicQuadratic<R>>,
    pub x_image: QuadModElement<R>,
    pub y_image: QuadModElement<R>,
}

impl<R: Ring> EliminationMap<R> {
    pub fn target(&self, ctx: &R::Ctx) -> QuadModRing<R> {
        match &self.modulus {
            Some(m) => QuadModRing::new(m.clone()),
            None => QuadModRing::base(ctx),
        }
    }

    pub fn apply(&self, ctx: &R::Ctx, h: &BiPoly<R>) -> QuadModElement<R> {
        h.eval_in(&self.target(ctx), &self.x_image, &self.y_image)
    }

    /// `pi_1` composed with the map, on the basis `{1, x̄, ȳ, x̄ȳ}`.
    pub fn projected_basis(&self, ctx: &R::Ctx) -> [R; 4] {
        let t = self.target(ctx);
        let xy = t.mul(&self.x_image, &self.y_image);
        [R::one(ctx), self.x_image.p0.clone(), self.y_image.p0.clone(), xy.p0]
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MinimalPrimeCert<R: Ring> {
    pub index: usize,
    /// Generators in `R[x,y]`; the first two are always `f1` and `f2`.
    pub generators: Vec<BiPoly<R>>,
    pub elimination: EliminationMap<R>,
}

/// `h = sum(cofactors[i] * generators[i])` for one generator `h` of `J`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MembershipTranscript<R: Ring> {
    pub cofactors: Vec<BiPoly<R>>,
}

/// A polynomial that must expand (or reduce modulo `I`) to zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityRecord<R: Ring> {
    pub name: String,
    pub residual: BiPoly<R>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitCertificate<R: Ufd> {
    pub problem: ExtensionProblem<R>,
    pub case: CaseTag,
    pub witnesses: Witnesses<R>,
    pub minimal_primes: Vec<MinimalPrimeCert<R>>,
    /// `rho(1), rho(x̄), rho(ȳ), rho(x̄ȳ)`.
    pub retraction: [R; 4],
    /// One per generator of `J`, against the selected prime's generators
    /// (or `[f1, f2]` in the free case).
    pub transcripts: Vec<MembershipTranscript<R>>,
    pub identities: Vec<IdentityRecord<R>>,
    pub probe_seed: u64,
}

impl<R: Ufd> SplitCertificate<R> {
    pub fn selected_prime(&self) -> Option<&MinimalPrimeCert<R>> {
        let i = self.case.index()?;
        self.minimal_primes.iter().find(|p| p.index == i)
    }

    /// Generators the transcripts refer to.
    pub fn ideal_generators(&self) -> Vec<BiPoly<R>> {
        match self.selected_prime() {
            Some(p) => p.generators.clone(),
            None => {
                let p = self.problem.presentation();
                vec![p.f1_poly(), p.f2_poly()]
            }
        }
    }
}

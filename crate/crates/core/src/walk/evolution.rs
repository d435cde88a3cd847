use num_complex::Complex64;

use super::arc::{ArcState, ZERO};
use super::coin::coin_at;
use super::verblunsky::VerblunskySeq;
use crate::error::{Error, Result};

/// Flip-flop shift: every arc's amplitude moves to the reversed arc, the
/// self-loop is fixed.
pub fn apply_flip_flop(state: &ArcState) -> ArcState {
    let mut out = state.clone();
    // pairs (2j+1, 2j+2) must both be present
    let len = out.stored_len();
    if len > 0 && len.is_multiple_of(2) {
        out.pad_to(len + 1);
    }
    let amps = out.amplitudes_mut();
    if amps.is_empty() {
        return out;
    }
    for pair in amps[1..].chunks_exact_mut(2) {
        pair.swap(0, 1);
    }
    out
}

/// Applies `C_j` to `(psi(j;R), psi(j;L))` at every stored site.
pub fn apply_coin(state: &ArcState, seq: &VerblunskySeq) -> ArcState {
    let mut out = state.clone();
    let len = out.stored_len();
    out.pad_to(len + len % 2);
    let amps = out.amplitudes_mut();
    for (j, pair) in amps.chunks_exact_mut(2).enumerate() {
        // slot 2j is (j;L), slot 2j+1 is (j;R)
        let (r, l) = coin_at(seq, j).apply(pair[1], pair[0]);
        pair[1] = r;
        pair[0] = l;
    }
    out
}

/// One step of `U = S C`.
pub fn step(state: &ArcState, seq: &VerblunskySeq) -> ArcState {
    apply_flip_flop(&apply_coin(state, seq))
}

/// One step of `U = S_m C'`: the rotated coin followed by the moving
/// shift, which carries right-arriving amplitudes one site left,
/// left-arriving amplitudes one site right, and reflects `(0;R)` into the
/// self-loop.
pub fn step_moving(state: &ArcState, seq: &VerblunskySeq) -> ArcState {
    let input = state.amplitudes();
    let sites = input.len().div_ceil(2);
    let mut rotated = vec![ZERO; 2 * sites];
    for j in 0..sites {
        let r = input.get(2 * j + 1).copied().unwrap_or(ZERO);
        let l = input.get(2 * j).copied().unwrap_or(ZERO);
        let (a, b) = coin_at(seq, j).rotated().apply(r, l);
        rotated[2 * j + 1] = a;
        rotated[2 * j] = b;
    }
    let right = |x: usize| rotated.get(2 * x + 1).copied().unwrap_or(ZERO);
    let left = |x: usize| rotated.get(2 * x).copied().unwrap_or(ZERO);

    let mut out = vec![ZERO; 2 * sites + 1];
    out[0] = right(0);
    for x in 0..sites {
        out[2 * x + 1] = right(x + 1);
        out[2 * x + 2] = left(x);
    }
    ArcState::from_amplitudes(out)
}

/// Lazy iteration of `U` starting from (and including) the initial state.
pub struct Evolution<'a> {
    seq: &'a VerblunskySeq,
    current: ArcState,
    started: bool,
}

impl<'a> Evolution<'a> {
    pub fn new(state: ArcState, seq: &'a VerblunskySeq) -> Self {
        Self {
            seq,
            current: state,
            started: false,
        }
    }
}

impl Iterator for Evolution<'_> {
    type Item = ArcState;

    fn next(&mut self) -> Option<ArcState> {
        if self.started {
            self.current = step(&self.current, self.seq);
        }
        self.started = true;
        Some(self.current.clone())
    }
}

/// Default cap on the number of sites a simulation may touch.
pub const DEFAULT_SITE_CAP: usize = 1_000_000;

/// The states `psi, U psi, ..., U^t psi`.
///
/// The light cone bounds every intermediate window by the initial window
/// plus `t` sites; if that bound exceeds `site_cap` nothing is computed.
pub fn evolve(
    state: &ArcState,
    seq: &VerblunskySeq,
    t: usize,
    site_cap: usize,
) -> Result<Vec<ArcState>> {
    let needed = state.window_sites().map_or(0, |s| s + 1) + t;
    if needed > site_cap {
        return Err(Error::ResourceCap {
            what: "evolution window (sites)",
            needed,
            cap: site_cap,
        });
    }
    Ok(Evolution::new(state.clone(), seq).take(t + 1).collect())
}

/// `<delta_a, U^t delta_a>` helper used by the localization estimates.
pub(crate) fn amplitude(state: &ArcState, index: usize) -> Complex64 {
    state.amplitudes().get(index).copied().unwrap_or(ZERO)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::arc::Arc;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_state(rng: &mut ChaCha8Rng, sites: usize) -> ArcState {
        let amps: Vec<Complex64> = (0..2 * sites + 1)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let s = ArcState::from_amplitudes(amps);
        let n = s.norm();
        s.scaled(c(1.0 / n, 0.0))
    }

    fn random_seq(rng: &mut ChaCha8Rng, sites: usize) -> VerblunskySeq {
        let table = (0..sites)
            .map(|_| Complex64::from_polar(rng.gen_range(0.0..1.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        VerblunskySeq::with_tail(table, c(0.2, -0.3)).unwrap()
    }

    #[test]
    fn flip_flop_examples() {
        let s = ArcState::delta(Arc::SELF_LOOP);
        assert_eq!(apply_flip_flop(&s).max_abs_diff(&s), 0.0);
        let s = ArcState::delta(Arc::right(3));
        let t = apply_flip_flop(&s);
        assert_eq!(t.max_abs_diff(&ArcState::delta(Arc::left(4))), 0.0);
        assert_eq!(apply_flip_flop(&t).max_abs_diff(&s), 0.0);
    }

    #[test]
    fn coin_examples() {
        let seq = VerblunskySeq::constant(c(0.0, 0.0)).unwrap();
        assert_eq!(apply_coin(&ArcState::zero(), &seq).norm_sqr(), 0.0);
        let out = apply_coin(&ArcState::delta(Arc::right(2)), &seq);
        assert_eq!(out.max_abs_diff(&ArcState::delta(Arc::left(2))), 0.0);

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_state(&mut rng, 10);
        let seq = random_seq(&mut rng, 12);
        assert!((apply_coin(&s, &seq).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn light_cone() {
        let seq = VerblunskySeq::constant(c(0.0, 0.0)).unwrap();
        let states = evolve(&ArcState::delta(Arc::SELF_LOOP), &seq, 3, 100).unwrap();
        assert_eq!(states.len(), 4);
        assert_eq!(states[0], ArcState::delta(Arc::SELF_LOOP));
        for (t, s) in states.iter().enumerate() {
            assert!(s.highest_site().unwrap() <= t);
        }
        assert!(matches!(
            evolve(&ArcState::delta(Arc::left(5)), &seq, 10, 12),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn evolve_zero_steps_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = random_state(&mut rng, 4);
        let seq = random_seq(&mut rng, 6);
        let out = evolve(&s, &seq, 0, 100).unwrap();
        assert_eq!(out, vec![s]);
    }

    #[test]
    fn unitarity_over_hundred_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = random_state(&mut rng, 8);
        let seq = random_seq(&mut rng, 30);
        for (t, u) in Evolution::new(s, &seq).take(101).enumerate() {
            assert!((u.norm() - 1.0).abs() <= 1e-12, "t = {t}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn pipelines_agree(seed in any::<u64>(), sites in 1usize..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_state(&mut rng, sites);
            let seq = random_seq(&mut rng, sites + 3);
            let a = step(&s, &seq);
            let b = step_moving(&s, &seq);
            prop_assert!(a.max_abs_diff(&b) <= 1e-14);
        }

        #[test]
        fn flip_flop_is_involution(seed in any::<u64>(), sites in 0usize..20) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_state(&mut rng, sites);
            prop_assert_eq!(apply_flip_flop(&apply_flip_flop(&s)).max_abs_diff(&s), 0.0);
        }

        #[test]
        fn support_grows_by_at_most_one(seed in any::<u64>(), sites in 0usize..10, t in 0usize..30) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = random_state(&mut rng, sites);
            let seq = random_seq(&mut rng, 5);
            let s0 = s.highest_site().unwrap_or(0);
            let last = evolve(&s, &seq, t, 1000).unwrap().pop().unwrap();
            prop_assert!(last.highest_site().unwrap_or(0) <= s0 + t);
        }
    }
}

//! Random reachable states built piece by piece.
//!
//! Scrambles only reach nearby states; these samplers draw uniformly from
//! all reachable states, optionally with some cubelets held at home.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cube::CubeState;
use crate::cubelet::{CubeletId, CubeletKind, Location, Slot};

/// Slot contents: `(home index, orientation)` per slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Placement {
    pub edges: [(u8, u8); 12],
    pub corners: [(u8, u8); 8],
}

impl Placement {
    pub fn solved() -> Self {
        Placement {
            edges: std::array::from_fn(|i| (i as u8, 0)),
            corners: std::array::from_fn(|i| (i as u8, 0)),
        }
    }

    pub fn to_state(&self) -> CubeState {
        let mut facelets = *CubeState::solved().facelets();
        let mut put = |kind: CubeletKind, slot: usize, home: u8, o: u8| {
            let slot = Slot {
                kind,
                index: slot as u8,
            };
            let colors = CubeletId { kind, home }.colors();
            let n = colors.len();
            for (k, &f) in slot.facelets().iter().enumerate() {
                facelets[f as usize] = colors[(k + n - o as usize) % n];
            }
        };
        for (slot, &(home, o)) in self.edges.iter().enumerate() {
            put(CubeletKind::Edge, slot, home, o);
        }
        for (slot, &(home, o)) in self.corners.iter().enumerate() {
            put(CubeletKind::Corner, slot, home, o);
        }
        CubeState::from_facelets(facelets)
    }
}

fn odd(perm: &[u8]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut swaps = 0;
    for start in 0..perm.len() {
        let mut i = start;
        let mut len = 0;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        swaps += len.max(1) - 1;
    }
    swaps % 2 == 1
}

/// Uniform random reachable state with every cubelet in `fixed` at home.
pub fn random_state_fixing<R: Rng + ?Sized>(rng: &mut R, fixed: &[CubeletId]) -> CubeState {
    let pins: Vec<(CubeletId, Location)> = fixed
        .iter()
        .map(|&c| {
            (
                c,
                Location {
                    slot: c.home_slot(),
                    orientation: 0,
                },
            )
        })
        .collect();
    random_state_pinning(rng, &pins).expect("home pins never conflict")
}

/// Uniform random reachable state with each pinned cubelet at the given
/// location. Returns `None` when pins collide or leave no free piece to
/// absorb the orientation and parity constraints.
pub fn random_state_pinning<R: Rng + ?Sized>(
    rng: &mut R,
    pins: &[(CubeletId, Location)],
) -> Option<CubeState> {
    let mut p = Placement::solved();
    let mut free = [(Vec::new(), Vec::new()), (Vec::new(), Vec::new())];
    for (k, kind) in [CubeletKind::Edge, CubeletKind::Corner].into_iter().enumerate() {
        let n = if kind == CubeletKind::Edge { 12 } else { 8 };
        let mut slot_taken = vec![false; n];
        let mut piece_taken = vec![false; n];
        for (id, loc) in pins.iter().filter(|(id, _)| id.kind == kind) {
            if loc.slot.kind != kind
                || std::mem::replace(&mut slot_taken[loc.slot.index as usize], true)
                || std::mem::replace(&mut piece_taken[id.home as usize], true)
            {
                return None;
            }
            let entry = (id.home, loc.orientation);
            match kind {
                CubeletKind::Edge => p.edges[loc.slot.index as usize] = entry,
                _ => p.corners[loc.slot.index as usize] = entry,
            }
        }
        free[k].0 = (0..n).filter(|&i| !slot_taken[i]).collect::<Vec<usize>>();
        free[k].1 = (0..n as u8).filter(|&i| !piece_taken[i as usize]).collect::<Vec<u8>>();
    }

    for (k, modulus) in [(0usize, 2u32), (1, 3)] {
        let (slots, homes) = &mut free[k];
        homes.shuffle(rng);
        let pieces: &mut [(u8, u8)] = if k == 0 { &mut p.edges } else { &mut p.corners };
        let pinned_sum: u32 = pieces
            .iter()
            .enumerate()
            .filter(|(i, _)| !slots.contains(i))
            .map(|(_, e)| e.1 as u32)
            .sum();
        let mut sum = pinned_sum;
        for (j, (&slot, &home)) in slots.iter().zip(homes.iter()).enumerate() {
            let o = if j + 1 == slots.len() {
                ((modulus - sum % modulus) % modulus) as u8
            } else {
                rng.random_range(0..modulus as u8)
            };
            sum += o as u32;
            pieces[slot] = (home, o);
        }
        if sum % modulus != 0 {
            return None;
        }
    }

    let edge_perm: Vec<u8> = p.edges.iter().map(|e| e.0).collect();
    let corner_perm: Vec<u8> = p.corners.iter().map(|c| c.0).collect();
    if odd(&edge_perm) != odd(&corner_perm) {
        if let [a, b, ..] = free[1].0[..] {
            p.corners.swap(a, b);
        } else if let [a, b, ..] = free[0].0[..] {
            p.edges.swap(a, b);
        } else {
            return None;
        }
    }
    Some(p.to_state())
}

/// Random state where each cubelet of `pool` is independently at home
/// with probability `keep`; the rest are placed wherever they land.
pub fn staged_state<R: Rng + ?Sized>(rng: &mut R, pool: &[CubeletId], keep: f64) -> CubeState {
    let fixed: Vec<CubeletId> = pool.iter().copied().filter(|_| rng.random_bool(keep)).collect();
    random_state_fixing(rng, &fixed)
}

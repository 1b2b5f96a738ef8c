//! Cubelets (physical pieces) and where they currently sit.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cube::{Color, CubeError, CubeState, Face};
use crate::tables::{CENTER_SLOTS, CORNER_SLOTS, EDGE_SLOTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubeletKind {
    Center,
    Edge,
    Corner,
}

impl CubeletKind {
    pub fn name(self) -> &'static str {
        match self {
            CubeletKind::Center => "center",
            CubeletKind::Edge => "edge",
            CubeletKind::Corner => "corner",
        }
    }
}

/// Identifies a cubelet by its home slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeletId {
    pub kind: CubeletKind,
    pub home: u8,
}

const EDGE_SLOT_NAMES: [&str; 12] = [
    "UR", "UF", "UL", "UB", "DR", "DF", "DL", "DB", "FR", "FL", "BL", "BR",
];
const CORNER_SLOT_NAMES: [&str; 8] = ["URF", "UFL", "ULB", "UBR", "DFR", "DLF", "DBL", "DRB"];

/// A slot (cubicle) a cubelet can occupy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub kind: CubeletKind,
    pub index: u8,
}

impl Slot {
    pub fn facelets(self) -> &'static [u8] {
        match self.kind {
            CubeletKind::Center => std::slice::from_ref(&CENTER_SLOTS[self.index as usize]),
            CubeletKind::Edge => &EDGE_SLOTS[self.index as usize],
            CubeletKind::Corner => &CORNER_SLOTS[self.index as usize],
        }
    }

    pub fn name(self) -> String {
        match self.kind {
            CubeletKind::Center => Face::ALL[self.index as usize].letter().to_string(),
            CubeletKind::Edge => EDGE_SLOT_NAMES[self.index as usize].to_string(),
            CubeletKind::Corner => CORNER_SLOT_NAMES[self.index as usize].to_string(),
        }
    }

    pub fn faces(self) -> Vec<Face> {
        self.facelets()
            .iter()
            .map(|&i| Face::of_facelet(i as usize))
            .collect()
    }

    pub fn all(kind: CubeletKind) -> impl Iterator<Item = Slot> {
        let n = match kind {
            CubeletKind::Center => 6,
            CubeletKind::Edge => 12,
            CubeletKind::Corner => 8,
        };
        (0..n).map(move |index| Slot { kind, index })
    }
}

impl FromStr for Slot {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(i) = EDGE_SLOT_NAMES.iter().position(|n| *n == s) {
            return Ok(Slot {
                kind: CubeletKind::Edge,
                index: i as u8,
            });
        }
        if let Some(i) = CORNER_SLOT_NAMES.iter().position(|n| *n == s) {
            return Ok(Slot {
                kind: CubeletKind::Corner,
                index: i as u8,
            });
        }
        let mut chars = s.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            if let Some(face) = Face::from_letter(c) {
                return Ok(Slot {
                    kind: CubeletKind::Center,
                    index: face as u8,
                });
            }
        }
        Err(format!("unknown slot {s:?}"))
    }
}

impl CubeletId {
    pub const fn edge(home: u8) -> Self {
        CubeletId {
            kind: CubeletKind::Edge,
            home,
        }
    }

    pub const fn corner(home: u8) -> Self {
        CubeletId {
            kind: CubeletKind::Corner,
            home,
        }
    }

    pub fn home_slot(self) -> Slot {
        Slot {
            kind: self.kind,
            index: self.home,
        }
    }

    /// Sticker colors in home-slot facelet order; the first is the reference sticker.
    pub fn colors(self) -> Vec<Color> {
        self.home_slot()
            .facelets()
            .iter()
            .map(|&i| Face::of_facelet(i as usize).home_color())
            .collect()
    }

    /// Short code from sticker letters, e.g. `WO` for the white-orange edge.
    pub fn code(self) -> String {
        self.colors().iter().map(|c| c.letter()).collect()
    }

    /// Human name, e.g. `white-orange`.
    pub fn color_name(self) -> String {
        self.colors()
            .iter()
            .map(|c| c.name())
            .collect::<Vec<_>>()
            .join("-")
    }

    pub fn all() -> impl Iterator<Item = CubeletId> {
        Slot::all(CubeletKind::Edge)
            .chain(Slot::all(CubeletKind::Corner))
            .map(|s| CubeletId {
                kind: s.kind,
                home: s.index,
            })
    }

    pub fn from_code(code: &str) -> Option<CubeletId> {
        let colors: Vec<Color> = code.chars().map(Color::from_letter).collect::<Option<_>>()?;
        match colors.len() {
            1 => {
                return Some(CubeletId {
                    kind: CubeletKind::Center,
                    home: Face::with_home_color(colors[0]) as u8,
                })
            }
            2 => tables().edge_of(&colors),
            3 => tables().corner_of(&colors),
            _ => None,
        }
        .filter(|&(_, o)| o == 0)
        .map(|(id, _)| id)
    }

    /// Home slot holds this cubelet in its home orientation.
    pub fn is_placed(self, state: &CubeState) -> bool {
        self.home_slot()
            .facelets()
            .iter()
            .all(|&i| state.facelet(i as usize) == Face::of_facelet(i as usize).home_color())
    }
}

impl Serialize for CubeletId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.code())
    }
}

impl<'de> Deserialize<'de> for CubeletId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let code = String::deserialize(d)?;
        CubeletId::from_code(&code)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown cubelet {code:?}")))
    }
}

impl fmt::Display for CubeletId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// Where a cubelet currently sits and how it is twisted.
///
/// `orientation` is the index, within the slot's facelet list, of the
/// facelet showing the cubelet's reference sticker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Location {
    pub slot: Slot,
    pub orientation: u8,
}

impl Location {
    /// Face showing the cubelet's `sticker`-th sticker (home-slot order).
    pub fn face_of_sticker(&self, sticker: usize) -> Face {
        let facelets = self.slot.facelets();
        let n = facelets.len();
        // stickers keep their cyclic order, shifted by the orientation
        let idx = (self.orientation as usize + sticker) % n;
        Face::of_facelet(facelets[idx] as usize)
    }
}

struct Lookup {
    edges: [[Option<(u8, u8)>; 6]; 6],
    corners: [[[Option<(u8, u8)>; 6]; 6]; 6],
}

impl Lookup {
    fn edge_of(&self, c: &[Color]) -> Option<(CubeletId, u8)> {
        self.edges[c[0] as usize][c[1] as usize].map(|(h, o)| (CubeletId::edge(h), o))
    }

    fn corner_of(&self, c: &[Color]) -> Option<(CubeletId, u8)> {
        self.corners[c[0] as usize][c[1] as usize][c[2] as usize]
            .map(|(h, o)| (CubeletId::corner(h), o))
    }
}

fn tables() -> &'static Lookup {
    static LOOKUP: OnceLock<Lookup> = OnceLock::new();
    LOOKUP.get_or_init(|| {
        let mut edges = [[None; 6]; 6];
        for home in 0..12u8 {
            let c = CubeletId::edge(home).colors();
            for o in 0..2u8 {
                // slot facelets read the stickers rotated by `o`
                let a = c[(2 - o as usize) % 2];
                let b = c[(3 - o as usize) % 2];
                edges[a as usize][b as usize] = Some((home, o));
            }
        }
        let mut corners = [[[None; 6]; 6]; 6];
        for home in 0..8u8 {
            let c = CubeletId::corner(home).colors();
            for o in 0..3u8 {
                let shift = (3 - o as usize) % 3;
                let read = [c[shift % 3], c[(shift + 1) % 3], c[(shift + 2) % 3]];
                corners[read[0] as usize][read[1] as usize][read[2] as usize] = Some((home, o));
            }
        }
        Lookup { edges, corners }
    })
}

/// Identifies the cubelet sitting in `slot`, or `None` if the stickers there
/// do not form any real cubelet.
pub fn cubelet_at(state: &CubeState, slot: Slot) -> Option<(CubeletId, u8)> {
    let facelets = slot.facelets();
    let mut colors = [Color::White; 3];
    for (c, &i) in colors.iter_mut().zip(facelets) {
        *c = state.facelet(i as usize);
    }
    match slot.kind {
        CubeletKind::Center => Some((
            CubeletId {
                kind: CubeletKind::Center,
                home: Face::with_home_color(colors[0]) as u8,
            },
            0,
        )),
        CubeletKind::Edge => tables().edge_of(&colors),
        CubeletKind::Corner => tables().corner_of(&colors),
    }
}

/// Current location of `id`. Assumes a valid state.
pub fn locate(state: &CubeState, id: CubeletId) -> Option<Location> {
    Slot::all(id.kind).find_map(|slot| match cubelet_at(state, slot) {
        Some((found, orientation)) if found == id => Some(Location { slot, orientation }),
        _ => None,
    })
}

/// Location of every edge and corner cubelet, indexed like `CubeletId::all()`.
pub fn cubelet_positions(state: &CubeState) -> Vec<(CubeletId, Location)> {
    let mut out = Vec::with_capacity(20);
    for kind in [CubeletKind::Edge, CubeletKind::Corner] {
        for slot in Slot::all(kind) {
            if let Some((id, orientation)) = cubelet_at(state, slot) {
                out.push((id, Location { slot, orientation }));
            }
        }
    }
    out.sort_by_key(|(id, _)| *id);
    out
}

fn parity(perm: &[u8]) -> u8 {
    let mut seen = vec![false; perm.len()];
    let mut swaps = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i] as usize;
            len += 1;
        }
        swaps += len - 1;
    }
    (swaps % 2) as u8
}

pub fn check_reachable(state: &CubeState) -> Result<(), CubeError> {
    let bad = |msg: String| Err(CubeError::Unreachable(msg));
    let mut perms = Vec::new();
    for (kind, modulus) in [(CubeletKind::Edge, 2u32), (CubeletKind::Corner, 3u32)] {
        let mut perm = Vec::new();
        let mut seen = vec![false; Slot::all(kind).count()];
        let mut twist = 0u32;
        for slot in Slot::all(kind) {
            let Some((id, o)) = cubelet_at(state, slot) else {
                return bad(format!("slot {} holds no valid {}", slot.name(), kind.name()));
            };
            if std::mem::replace(&mut seen[id.home as usize], true) {
                return bad(format!("{} {} appears twice", kind.name(), id));
            }
            perm.push(id.home);
            twist += o as u32;
        }
        if twist % modulus != 0 {
            return bad(format!("{} orientation sum is invalid", kind.name()));
        }
        perms.push(parity(&perm));
    }
    if perms[0] != perms[1] {
        return bad("edge and corner permutation parity differ".into());
    }
    Ok(())
}

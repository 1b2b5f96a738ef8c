//! Facelet permutation tables.
//!
//! Facelets are indexed face-major in U, D, L, R, F, B order, nine per face,
//! row-major as seen from outside the cube:
//!
//! ```text
//!             U0 U1 U2
//!             U3 U4 U5
//!             U6 U7 U8
//!  L0 L1 L2   F0 F1 F2   R0 R1 R2   B0 B1 B2
//!  L3 L4 L5   F3 F4 F5   R3 R4 R5   B3 B4 B5
//!  L6 L7 L8   F6 F7 F8   R6 R7 R8   B6 B7 B8
//!             D0 D1 D2
//!             D3 D4 D5
//!             D6 D7 D8
//! ```
//!
//! Each table maps a destination index to the index it is filled from:
//! `after[i] = before[TABLE[i]]`.

/// Source index per destination, one table per move in `Move::ALL` order.
pub(crate) const MOVE_TABLES: [[u8; 54]; 12] = [
    // U
    [
        6, 3, 0, 7, 4, 1, 8, 5, 2, 9, 10, 11, 12, 13, 14, 15, 16, 17,
        36, 37, 38, 21, 22, 23, 24, 25, 26, 45, 46, 47, 30, 31, 32, 33, 34, 35,
        27, 28, 29, 39, 40, 41, 42, 43, 44, 18, 19, 20, 48, 49, 50, 51, 52, 53,
    ],
    // U'
    [
        2, 5, 8, 1, 4, 7, 0, 3, 6, 9, 10, 11, 12, 13, 14, 15, 16, 17,
        45, 46, 47, 21, 22, 23, 24, 25, 26, 36, 37, 38, 30, 31, 32, 33, 34, 35,
        18, 19, 20, 39, 40, 41, 42, 43, 44, 27, 28, 29, 48, 49, 50, 51, 52, 53,
    ],
    // D
    [
        0, 1, 2, 3, 4, 5, 6, 7, 8, 15, 12, 9, 16, 13, 10, 17, 14, 11,
        18, 19, 20, 21, 22, 23, 51, 52, 53, 27, 28, 29, 30, 31, 32, 42, 43, 44,
        36, 37, 38, 39, 40, 41, 24, 25, 26, 45, 46, 47, 48, 49, 50, 33, 34, 35,
    ],
    // D'
    [
        0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 14, 17, 10, 13, 16, 9, 12, 15,
        18, 19, 20, 21, 22, 23, 42, 43, 44, 27, 28, 29, 30, 31, 32, 51, 52, 53,
        36, 37, 38, 39, 40, 41, 33, 34, 35, 45, 46, 47, 48, 49, 50, 24, 25, 26,
    ],
    // L
    [
        53, 1, 2, 50, 4, 5, 47, 7, 8, 36, 10, 11, 39, 13, 14, 42, 16, 17,
        24, 21, 18, 25, 22, 19, 26, 23, 20, 27, 28, 29, 30, 31, 32, 33, 34, 35,
        0, 37, 38, 3, 40, 41, 6, 43, 44, 45, 46, 15, 48, 49, 12, 51, 52, 9,
    ],
    // L'
    [
        36, 1, 2, 39, 4, 5, 42, 7, 8, 53, 10, 11, 50, 13, 14, 47, 16, 17,
        20, 23, 26, 19, 22, 25, 18, 21, 24, 27, 28, 29, 30, 31, 32, 33, 34, 35,
        9, 37, 38, 12, 40, 41, 15, 43, 44, 45, 46, 6, 48, 49, 3, 51, 52, 0,
    ],
    // R
    [
        0, 1, 38, 3, 4, 41, 6, 7, 44, 9, 10, 51, 12, 13, 48, 15, 16, 45,
        18, 19, 20, 21, 22, 23, 24, 25, 26, 33, 30, 27, 34, 31, 28, 35, 32, 29,
        36, 37, 11, 39, 40, 14, 42, 43, 17, 8, 46, 47, 5, 49, 50, 2, 52, 53,
    ],
    // R'
    [
        0, 1, 51, 3, 4, 48, 6, 7, 45, 9, 10, 38, 12, 13, 41, 15, 16, 44,
        18, 19, 20, 21, 22, 23, 24, 25, 26, 29, 32, 35, 28, 31, 34, 27, 30, 33,
        36, 37, 2, 39, 40, 5, 42, 43, 8, 17, 46, 47, 14, 49, 50, 11, 52, 53,
    ],
    // F
    [
        0, 1, 2, 3, 4, 5, 26, 23, 20, 33, 30, 27, 12, 13, 14, 15, 16, 17,
        18, 19, 9, 21, 22, 10, 24, 25, 11, 6, 28, 29, 7, 31, 32, 8, 34, 35,
        42, 39, 36, 43, 40, 37, 44, 41, 38, 45, 46, 47, 48, 49, 50, 51, 52, 53,
    ],
    // F'
    [
        0, 1, 2, 3, 4, 5, 27, 30, 33, 20, 23, 26, 12, 13, 14, 15, 16, 17,
        18, 19, 8, 21, 22, 7, 24, 25, 6, 11, 28, 29, 10, 31, 32, 9, 34, 35,
        38, 41, 44, 37, 40, 43, 36, 39, 42, 45, 46, 47, 48, 49, 50, 51, 52, 53,
    ],
    // B
    [
        29, 32, 35, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 18, 21, 24,
        2, 19, 20, 1, 22, 23, 0, 25, 26, 27, 28, 17, 30, 31, 16, 33, 34, 15,
        36, 37, 38, 39, 40, 41, 42, 43, 44, 51, 48, 45, 52, 49, 46, 53, 50, 47,
    ],
    // B'
    [
        24, 21, 18, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 35, 32, 29,
        15, 19, 20, 16, 22, 23, 17, 25, 26, 27, 28, 0, 30, 31, 1, 33, 34, 2,
        36, 37, 38, 39, 40, 41, 42, 43, 44, 47, 50, 53, 46, 49, 52, 45, 48, 51,
    ],
];

/// Whole-cube quarter rotation about the U-D axis, turning the same way as U.
pub(crate) const Y_ROTATION: [u8; 54] = [
    6, 3, 0, 7, 4, 1, 8, 5, 2, 11, 14, 17, 10, 13, 16, 9, 12, 15,
    36, 37, 38, 39, 40, 41, 42, 43, 44, 45, 46, 47, 48, 49, 50, 51, 52, 53,
    27, 28, 29, 30, 31, 32, 33, 34, 35, 18, 19, 20, 21, 22, 23, 24, 25, 26,
];

/// Edge slots as (U/D or F/B facelet, other facelet), in UR UF UL UB DR DF DL DB FR FL BL BR order.
pub(crate) const EDGE_SLOTS: [[u8; 2]; 12] = [
    [5, 28],
    [7, 37],
    [3, 19],
    [1, 46],
    [14, 34],
    [10, 43],
    [12, 25],
    [16, 52],
    [41, 30],
    [39, 23],
    [50, 21],
    [48, 32],
];

/// Corner slots with the U/D facelet first, then clockwise, in URF UFL ULB UBR DFR DLF DBL DRB order.
pub(crate) const CORNER_SLOTS: [[u8; 3]; 8] = [
    [8, 27, 38],
    [6, 36, 20],
    [0, 18, 47],
    [2, 45, 29],
    [11, 44, 33],
    [9, 26, 42],
    [15, 53, 24],
    [17, 35, 51],
];

pub(crate) const CENTER_SLOTS: [u8; 6] = [4, 13, 22, 31, 40, 49];

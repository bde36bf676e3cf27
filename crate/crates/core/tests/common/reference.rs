//! Published fixation probabilities (percent, two decimals) for N = 100, s = 1,
//! c_a = 1, epsilon = 0.01 under regime 2b. Rows are invaders, columns residents.

pub const COLUMNS: [&str; 8] = ["1-", "R-", "0-", "1A", "RA", "0A", "1+", "R+"];

/// One invader row: name and percent per column.
pub type Row = (&'static str, [f64; 8]);

/// `(benefit, rows)` where each row is `(invader, [percent per column])`; the diagonal is `NaN`.
pub const TABLES: [(f64, [Row; 8]); 3] = [
    (
        1.5,
        [
            (
                "1-",
                [f64::NAN, 0.00, 0.00, 63.77, 0.00, 0.00, 63.77, 12.10],
            ),
            (
                "R-",
                [7.85, f64::NAN, 1.00, 86.24, 5.31, 1.00, 86.38, 63.96],
            ),
            ("0-", [7.42, 1.00, f64::NAN, 5.36, 5.31, 1.00, 63.97, 63.96]),
            ("1A", [0.00, 0.00, 0.00, f64::NAN, 0.78, 0.00, 1.00, 1.19]),
            ("RA", [0.00, 0.00, 0.00, 1.26, f64::NAN, 0.00, 2.02, 2.31]),
            ("0A", [7.42, 1.00, 1.00, 5.36, 5.31, f64::NAN, 63.97, 63.96]),
            ("1+", [0.00, 0.00, 0.00, 1.00, 0.36, 0.00, f64::NAN, 0.59]),
            ("R+", [0.00, 0.00, 0.00, 0.90, 0.31, 0.00, 1.56, f64::NAN]),
        ],
    ),
    (
        5.5,
        [
            (
                "1-",
                [f64::NAN, 0.00, 0.00, 65.20, 0.00, 0.00, 65.20, 14.56],
            ),
            (
                "R-",
                [7.85, f64::NAN, 1.00, 86.78, 0.00, 1.00, 86.92, 65.38],
            ),
            ("0-", [7.42, 1.00, f64::NAN, 0.00, 0.00, 1.00, 65.38, 65.38]),
            ("1A", [0.00, 0.00, 96.87, f64::NAN, 3.51, 96.87, 1.00, 3.48]),
            (
                "RA",
                [96.64, 96.64, 96.64, 0.12, f64::NAN, 96.64, 0.63, 2.37],
            ),
            ("0A", [7.42, 1.00, 1.00, 0.00, 0.00, f64::NAN, 65.38, 65.38]),
            ("1+", [0.00, 0.00, 0.00, 1.00, 0.74, 0.00, f64::NAN, 0.59]),
            ("R+", [0.00, 0.00, 0.00, 0.36, 0.30, 0.00, 1.56, f64::NAN]),
        ],
    ),
    (
        9.5,
        [
            (
                "1-",
                [f64::NAN, 0.00, 0.00, 66.58, 0.00, 0.00, 66.58, 17.11],
            ),
            (
                "R-",
                [7.85, f64::NAN, 1.00, 87.30, 0.00, 1.00, 87.44, 66.74],
            ),
            ("0-", [7.42, 1.00, f64::NAN, 0.00, 0.00, 1.00, 66.74, 66.74]),
            ("1A", [0.00, 0.00, 99.94, f64::NAN, 7.15, 99.94, 1.00, 6.94]),
            (
                "RA",
                [99.93, 99.93, 99.93, 0.00, f64::NAN, 99.93, 0.15, 2.43],
            ),
            ("0A", [7.42, 1.00, 1.00, 0.00, 0.00, f64::NAN, 66.74, 66.74]),
            ("1+", [0.00, 0.00, 0.00, 1.00, 1.18, 0.00, f64::NAN, 0.59]),
            ("R+", [0.00, 0.00, 0.00, 0.10, 0.28, 0.00, 1.56, f64::NAN]),
        ],
    ),
];

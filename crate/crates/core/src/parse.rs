//! Parsers for the textual inputs of the command-line tool: vectors,
//! sampling grids, metric names, suite names and direction modes.
//!
//! Every parser is total: malformed input yields
//! [`GeomError::InvalidInput`], never a panic.

use std::fmt;
use std::str::FromStr;

use crate::error::{GeomError, Result};
use crate::linalg::Vec2;

fn invalid(msg: impl Into<String>) -> GeomError {
    GeomError::InvalidInput(msg.into())
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| invalid(format!("{what}: expected a number, got {s:?}")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(invalid(format!("{what}: value must be finite, got {s:?}")))
    }
}

/// Parses `"a,b"` into a vector. Whitespace around either number is allowed.
pub fn parse_vec2(s: &str) -> Result<Vec2> {
    let mut parts = s.split(',');
    let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(invalid(format!("expected two comma-separated numbers, got {s:?}")));
    };
    Ok(Vec2::new(
        parse_f64(a, "first component")?,
        parse_f64(b, "second component")?,
    ))
}

/// A rectangular sampling grid with `nx × ny` nodes, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
    pub nx: usize,
    pub ny: usize,
}

/// Upper bound on `nx · ny`.
pub const MAX_GRID_CELLS: usize = 1 << 22;

impl GridSpec {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64, nx: usize, ny: usize) -> Result<Self> {
        if ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) {
            return Err(invalid("grid bounds must be finite"));
        }
        if xmin > xmax || ymin > ymax {
            return Err(invalid("grid bounds must satisfy min <= max"));
        }
        if nx < 2 || ny < 2 {
            return Err(invalid(format!("grid needs at least 2 nodes per axis, got {nx}x{ny}")));
        }
        if nx.checked_mul(ny).is_none_or(|n| n > MAX_GRID_CELLS) {
            return Err(invalid(format!("grid {nx}x{ny} exceeds {MAX_GRID_CELLS} cells")));
        }
        Ok(GridSpec {
            xmin,
            xmax,
            ymin,
            ymax,
            nx,
            ny,
        })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node `(i, j)`, `i` along x. Row-major order is `j * nx + i`.
    pub fn node(&self, i: usize, j: usize) -> Vec2 {
        let t = |lo: f64, hi: f64, k: usize, n: usize| lo + (hi - lo) * k as f64 / (n - 1) as f64;
        Vec2::new(t(self.xmin, self.xmax, i, self.nx), t(self.ymin, self.ymax, j, self.ny))
    }

    /// All nodes, row-major with x varying fastest.
    pub fn nodes(&self) -> impl Iterator<Item = Vec2> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| self.node(i, j)))
    }
}

impl FromStr for GridSpec {
    type Err = GeomError;

    /// `"xmin:xmax:nx,ymin:ymax:ny"`.
    fn from_str(s: &str) -> Result<Self> {
        let axis = |part: &str, name: &str| -> Result<(f64, f64, usize)> {
            let mut it = part.split(':');
            let (Some(lo), Some(hi), Some(n), None) = (it.next(), it.next(), it.next(), it.next()) else {
                return Err(invalid(format!("{name} axis: expected min:max:count, got {part:?}")));
            };
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{name} axis: bad node count {n:?}")))?;
            Ok((parse_f64(lo, name)?, parse_f64(hi, name)?, n))
        };
        let mut parts = s.split(',');
        let (Some(xs), Some(ys), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(invalid(format!("expected xmin:xmax:nx,ymin:ymax:ny, got {s:?}")));
        };
        let (xmin, xmax, nx) = axis(xs, "x")?;
        let (ymin, ymax, ny) = axis(ys, "y")?;
        GridSpec::new(xmin, xmax, ymin, ymax, nx, ny)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{},{}:{}:{}",
            self.xmin, self.xmax, self.nx, self.ymin, self.ymax, self.ny
        )
    }
}

pub fn parse_grid(s: &str) -> Result<GridSpec> {
    s.parse()
}

/// Metrics selectable by name.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricName {
    /// Funk metric of the Klein unit disc.
    KleinFunk,
    /// Klein metric of the Euclidean unit disc.
    Klein,
    /// Funk metric in the Poincaré disc.
    PoincareFunk,
    /// Funk metric in the upper half-plane.
    UpperFunk,
    /// Funk metric of the centred Euclidean disc of the given radius.
    DiscFunk {
        radius: f64,
    },
    Poincare,
    UpperHalf,
    Euclidean,
}

impl MetricName {
    pub const ALL: &'static [&'static str] = &[
        "klein-funk",
        "klein",
        "poincare-funk",
        "upper-funk",
        "disc-funk[:R]",
        "poincare",
        "upper-half",
        "euclidean",
    ];
}

impl FromStr for MetricName {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let name = match (head, arg) {
            ("disc-funk", None) => MetricName::DiscFunk { radius: 1.0 },
            ("disc-funk", Some(r)) => {
                let radius = parse_f64(r, "disc radius")?;
                if radius <= 0.0 {
                    return Err(invalid(format!("disc radius must be positive, got {radius}")));
                }
                MetricName::DiscFunk { radius }
            }
            (_, Some(_)) => return Err(invalid(format!("metric {head:?} takes no parameter"))),
            ("klein-funk", None) => MetricName::KleinFunk,
            ("klein", None) => MetricName::Klein,
            ("poincare-funk", None) => MetricName::PoincareFunk,
            ("upper-funk", None) => MetricName::UpperFunk,
            ("poincare", None) => MetricName::Poincare,
            ("upper-half", None) => MetricName::UpperHalf,
            ("euclidean", None) => MetricName::Euclidean,
            _ => {
                return Err(invalid(format!(
                    "unknown metric {s:?}; expected one of {}",
                    MetricName::ALL.join(", ")
                )))
            }
        };
        Ok(name)
    }
}

impl fmt::Display for MetricName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricName::KleinFunk => f.write_str("klein-funk"),
            MetricName::Klein => f.write_str("klein"),
            MetricName::PoincareFunk => f.write_str("poincare-funk"),
            MetricName::UpperFunk => f.write_str("upper-funk"),
            MetricName::DiscFunk { radius } if *radius == 1.0 => f.write_str("disc-funk"),
            MetricName::DiscFunk { radius } => write!(f, "disc-funk:{radius}"),
            MetricName::Poincare => f.write_str("poincare"),
            MetricName::UpperHalf => f.write_str("upper-half"),
            MetricName::Euclidean => f.write_str("euclidean"),
        }
    }
}

/// Verification suites of the `check` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteName {
    Pullbacks,
    Isometries,
    Oracles,
    Zermelo,
    TypoLedger,
    All,
}

impl SuiteName {
    pub const ALL: &'static [&'static str] = &["pullbacks", "isometries", "oracles", "zermelo", "typo-ledger", "all"];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Pullbacks => "pullbacks",
            SuiteName::Isometries => "isometries",
            SuiteName::Oracles => "oracles",
            SuiteName::Zermelo => "zermelo",
            SuiteName::TypoLedger => "typo-ledger",
            SuiteName::All => "all",
        }
    }
}

impl FromStr for SuiteName {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "pullbacks" => SuiteName::Pullbacks,
            "isometries" => SuiteName::Isometries,
            "oracles" => SuiteName::Oracles,
            "zermelo" => SuiteName::Zermelo,
            "typo-ledger" => SuiteName::TypoLedger,
            "all" => SuiteName::All,
            _ => {
                return Err(invalid(format!(
                    "unknown suite {s:?}; expected one of {}",
                    SuiteName::ALL.join(", ")
                )))
            }
        })
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Direction used at each cell of a curvature grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum XiMode {
    /// The same vector everywhere.
    Fixed(Vec2),
    /// `x/|x|`, or `(1, 0)` at the origin.
    Radial,
    /// `(−x², x¹)/|x|`, or `(0, 1)` at the origin.
    Tangential,
}

impl XiMode {
    pub fn direction(&self, x: Vec2) -> Vec2 {
        let n = x.norm();
        match *self {
            XiMode::Fixed(v) => v,
            XiMode::Radial if n == 0.0 => Vec2::new(1.0, 0.0),
            XiMode::Radial => x * (1.0 / n),
            XiMode::Tangential if n == 0.0 => Vec2::new(0.0, 1.0),
            XiMode::Tangential => Vec2::new(-x.y, x.x) * (1.0 / n),
        }
    }
}

/// Parses `radial`, `tangential`, or `fixed:a,b`.
pub fn parse_xi_mode(s: &str) -> Result<XiMode> {
    match s {
        "radial" => Ok(XiMode::Radial),
        "tangential" => Ok(XiMode::Tangential),
        _ => match s.strip_prefix("fixed:") {
            Some(v) => {
                let v = parse_vec2(v)?;
                if v.norm() == 0.0 {
                    Err(GeomError::ZeroVector)
                } else {
                    Ok(XiMode::Fixed(v))
                }
            }
            None => Err(invalid(format!(
                "unknown direction mode {s:?}; expected radial, tangential or fixed:a,b"
            ))),
        },
    }
}

//! Plain PBM (`P1`) bitmaps as two-dimensional point sets.
//!
//! Pixel `(row, col)` becomes the vector `(col - ocol, orow - row)`, where
//! `(ocol, orow)` is the origin pixel, so rows further down have smaller `y`.

use std::path::Path;

use super::IntPointSet;
use crate::error::{Error, Result};

/// Where the origin sits when the file carries no `# origin COL ROW` line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefaultOrigin {
    TopLeft,
    /// Floor of the geometric centre, the usual choice for structuring elements.
    Center,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitmap {
    pub width: usize,
    pub height: usize,
    /// `(col, row)` of the pixel holding the zero vector. May lie outside the canvas.
    pub origin: (i64, i64),
    pub points: IntPointSet,
}

impl Bitmap {
    pub fn parse(text: &str, default: DefaultOrigin) -> Result<Bitmap> {
        let mut origin = None;
        let mut body = String::new();
        for line in text.lines() {
            let (content, comment) = match line.find('#') {
                Some(i) => (&line[..i], Some(&line[i + 1..])),
                None => (line, None),
            };
            body.push_str(content);
            body.push('\n');
            if let Some(rest) = comment.and_then(|c| c.trim().strip_prefix("origin")) {
                let nums: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match nums.as_slice() {
                    [c, r] => c.parse::<i64>().ok().zip(r.parse::<i64>().ok()),
                    _ => None,
                };
                origin = Some(parsed.ok_or_else(|| Error::Parse(format!("bad origin comment `#{}`", comment.unwrap())))?);
            }
        }
        let mut tokens = body.split_whitespace();
        let magic = tokens.next();
        if magic != Some("P1") {
            return Err(Error::Parse("not a plain PBM file (expected `P1`)".into()));
        }
        let mut dim = |what: &str| -> Result<usize> {
            tokens
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("missing or invalid {what}")))
        };
        let width = dim("width")?;
        let height = dim("height")?;
        let bits: Vec<bool> = tokens
            .flat_map(str::chars)
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected pixel character `{other}`"))),
            })
            .collect::<Result<_>>()?;
        if bits.len() != width * height {
            return Err(Error::Parse(format!(
                "expected {} pixels, found {}",
                width * height,
                bits.len()
            )));
        }
        let origin = origin.unwrap_or(match default {
            DefaultOrigin::TopLeft => (0, 0),
            DefaultOrigin::Center => ((width as i64 - 1).max(0) / 2, (height as i64 - 1).max(0) / 2),
        });
        let mut points = IntPointSet::empty(2)?;
        for row in 0..height {
            for col in 0..width {
                if bits[row * width + col] {
                    points.insert(&[col as i64 - origin.0, origin.1 - row as i64])?;
                }
            }
        }
        Ok(Bitmap {
            width,
            height,
            origin,
            points,
        })
    }

    pub fn load(path: impl AsRef<Path>, default: DefaultOrigin) -> Result<Bitmap> {
        Bitmap::parse(&std::fs::read_to_string(path)?, default)
    }

    /// `points` drawn on the smallest canvas containing both this canvas and
    /// every point, keeping this bitmap's origin vector fixed.
    pub fn reframe(&self, points: IntPointSet) -> Result<Bitmap> {
        if points.dim() != 2 {
            return Err(Error::DimMismatch(2, points.dim()));
        }
        let (ocol, orow) = self.origin;
        let (mut min_c, mut max_c) = (0i64, self.width as i64 - 1);
        let (mut min_r, mut max_r) = (0i64, self.height as i64 - 1);
        for p in points.iter() {
            let (c, r) = (p[0] + ocol, orow - p[1]);
            min_c = min_c.min(c);
            max_c = max_c.max(c);
            min_r = min_r.min(r);
            max_r = max_r.max(r);
        }
        Ok(Bitmap {
            width: (max_c - min_c + 1).max(0) as usize,
            height: (max_r - min_r + 1).max(0) as usize,
            origin: (ocol - min_c, orow - min_r),
            points,
        })
    }

    /// Plain PBM text, rows top to bottom, with an origin comment.
    pub fn to_pbm(&self) -> String {
        let (ocol, orow) = self.origin;
        let mut grid = vec![vec!['0'; self.width]; self.height];
        for p in self.points.iter() {
            let (c, r) = (p[0] + ocol, orow - p[1]);
            if (0..self.width as i64).contains(&c) && (0..self.height as i64).contains(&r) {
                grid[r as usize][c as usize] = '1';
            }
        }
        let mut out = format!("P1\n# origin {ocol} {orow}\n{} {}\n", self.width, self.height);
        for row in grid {
            out.extend(row);
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_orientation() {
        let b = Bitmap::parse("P1\n# a comment\n3 2\n1 0 0\n0 0 1\n", DefaultOrigin::TopLeft).unwrap();
        assert_eq!((b.width, b.height, b.origin), (3, 2, (0, 0)));
        assert_eq!(b.points, IntPointSet::from_points(2, [[0, 0], [2, -1]]).unwrap());
    }

    #[test]
    fn centre_and_explicit_origin() {
        let se = Bitmap::parse("P1 1 2 1 1", DefaultOrigin::Center).unwrap();
        assert_eq!(se.origin, (0, 0));
        assert_eq!(se.points, IntPointSet::from_points(2, [[0, 0], [0, -1]]).unwrap());
        let se = Bitmap::parse("P1\n# origin 1 1\n3 3\n000\n010\n000\n", DefaultOrigin::TopLeft).unwrap();
        assert_eq!(se.points, IntPointSet::origin(2).unwrap());
        let centred = Bitmap::parse("P1\n3 3\n000\n010\n000\n", DefaultOrigin::Center).unwrap();
        assert_eq!(centred.points, se.points);
    }

    #[test]
    fn errors() {
        assert!(Bitmap::parse("P4 1 1 1", DefaultOrigin::TopLeft).is_err());
        assert!(Bitmap::parse("P1 2 2 1 0 1", DefaultOrigin::TopLeft).is_err());
        assert!(Bitmap::parse("P1 1 1 2", DefaultOrigin::TopLeft).is_err());
        assert!(Bitmap::parse("P1\n# origin x\n1 1 1", DefaultOrigin::TopLeft).is_err());
    }

    #[test]
    fn round_trip_and_growth() {
        let b = Bitmap::parse("P1\n2 2\n10\n01\n", DefaultOrigin::TopLeft).unwrap();
        let again = Bitmap::parse(&b.to_pbm(), DefaultOrigin::Center).unwrap();
        assert_eq!(again, b);
        let mut grown = b.points.clone();
        grown.insert(&[-1, 1]).unwrap();
        let framed = b.reframe(grown.clone()).unwrap();
        assert_eq!((framed.width, framed.height, framed.origin), (3, 3, (1, 1)));
        assert_eq!(Bitmap::parse(&framed.to_pbm(), DefaultOrigin::TopLeft).unwrap().points, grown);
    }
}

//! Exact rational scalars and small lattice helpers used across the crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{parse_err, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q", "p", or a decimal such as "-1.25" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad rational numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad rational denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(parse_err(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse()
                .map_err(|_| parse_err(format!("bad decimal in {s:?}")))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_err(format!("bad decimal in {s:?}")));
        }
        let f: BigInt = frac.parse().unwrap();
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = Rat::new(f, scale);
        let int_part = Rat::from_integer(i);
        return Ok(if neg { int_part - frac_part } else { int_part + frac_part });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| parse_err(format!("bad rational {s:?}")))?;
    Ok(Rat::from_integer(n))
}

/// Renders a rational as "p" or "p/q".
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for plotting and dequantization bounds.
    str::parse::<f64>(&n.to_string()).unwrap() / str::parse::<f64>(&d.to_string()).unwrap()
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    num::integer::gcd(a.abs(), b.abs())
}

/// Primitive integer vector parallel to (x, y), pointing the same way.
/// Returns None for the zero vector.
pub fn primitive2(x: i64, y: i64) -> Option<(i64, i64)> {
    if x == 0 && y == 0 {
        return None;
    }
    let g = gcd_i64(x, y).max(1);
    Some((x / g, y / g))
}

/// Primitive direction of an exact rational vector.
pub fn primitive_of_rat2(dx: &Rat, dy: &Rat) -> Option<(i64, i64)> {
    if dx.is_zero() && dy.is_zero() {
        return None;
    }
    // Clear denominators, then divide by the gcd of the numerators.
    let l = dx.denom() * dy.denom();
    let nx = (dx * Rat::from_integer(l.clone())).to_integer();
    let ny = (dy * Rat::from_integer(l)).to_integer();
    let g = num::integer::gcd(nx.abs(), ny.abs());
    let px = &nx / &g;
    let py = &ny / &g;
    Some((
        i64::try_from(&px).expect("primitive direction overflows i64"),
        i64::try_from(&py).expect("primitive direction overflows i64"),
    ))
}

/// Lattice length of the segment between two lattice points.
pub fn lattice_length(a: (i64, i64), b: (i64, i64)) -> i64 {
    gcd_i64(b.0 - a.0, b.1 - a.1)
}

/// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn sign_of(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

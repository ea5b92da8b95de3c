//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored lowest degree first and reduced into `0..p`.
//! The zero polynomial is the empty vector; every other value has a
//! nonzero leading coefficient.

pub(crate) type Coeffs = Vec<u64>;

pub(crate) fn trim(mut a: Coeffs) -> Coeffs {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn neg(a: &[u64], p: u64) -> Coeffs {
    a.iter().map(|&c| (p - c) % p).collect()
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    add(a, &neg(b, p), p)
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> Coeffs {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn inv_mod(c: u64, p: u64) -> u64 {
    debug_assert!(!c.is_multiple_of(p));
    pow_mod(c % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Division with remainder; panics on a zero divisor.
pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Coeffs, Coeffs) {
    let db = degree(b).expect("polynomial division by zero");
    let lead_inv = inv_mod(b[db], p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quot = vec![0u64; rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = rem[k + db] * lead_inv % p;
        quot[k] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - c * bj % p) % p;
        }
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    div_rem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> (Coeffs, u64) {
    match a.last() {
        None => (Vec::new(), 1),
        Some(&lead) => {
            let inv = inv_mod(lead, p);
            (scale(a, inv, p), inv)
        }
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Coeffs {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p).0
}

fn pow_rem(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Coeffs {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        exp >>= 1;
    }
    acc
}

/// Irreducibility over `F_p`: `f` of degree `d` is irreducible iff
/// `gcd(f, x^(p^i) - x) = 1` for every `1 <= i <= d/2`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = degree(f) else { return false };
    if d == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=d / 2 {
        h = pow_rem(&h, p, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Renders `a` in the canonical ASCII form, e.g. `x^2+2x+1`.
pub(crate) fn format(a: &[u64]) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (k, c) {
            (0, c) => out.push_str(&c.to_string()),
            (_, 1) => {}
            (_, c) => out.push_str(&c.to_string()),
        }
        match k {
            0 => {}
            1 => out.push('x'),
            k => {
                out.push_str("x^");
                out.push_str(&k.to_string());
            }
        }
    }
    out
}

/// Parses the canonical form produced by [`format`]. Anything that does
/// not re-render byte-for-byte is rejected.
pub(crate) fn parse(s: &str, p: u64) -> Result<Coeffs, String> {
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut coeffs: Coeffs = Vec::new();
    for term in s.split('+') {
        let (c, k) = parse_term(term)?;
        if c == 0 || c >= p {
            return Err(format!("coefficient {c} in term `{term}` is not in 1..{p}"));
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = (coeffs[k] + c) % p;
    }
    let coeffs = trim(coeffs);
    let rendered = format(&coeffs);
    if rendered != s {
        return Err(format!("`{s}` is not in canonical form (expected `{rendered}`)"));
    }
    Ok(coeffs)
}

fn parse_term(term: &str) -> Result<(u64, usize), String> {
    let bad = || format!("malformed term `{term}`");
    match term.find('x') {
        None => Ok((term.parse().map_err(|_| bad())?, 0)),
        Some(pos) => {
            let (coef, rest) = term.split_at(pos);
            let c = if coef.is_empty() { 1 } else { coef.parse().map_err(|_| bad())? };
            let k = match &rest[1..] {
                "" => 1,
                e => e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            Ok((c, k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = vec![1, 2, 0, 1];
        let b = vec![2, 1];
        let (q, r) = div_rem(&a, &b, 3);
        assert_eq!(add(&mul(&q, &b, 3), &r, 3), a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn irreducibility_small_cases() {
        assert!(is_irreducible(&[1, 1, 1], 2)); // x^2+x+1
        assert!(!is_irreducible(&[1, 0, 1], 2)); // (x+1)^2
        assert!(is_irreducible(&[1, 1], 3));
        assert!(!is_irreducible(&[0, 0, 1], 3));
        assert!(is_irreducible(&[1, 1, 0, 1], 2)); // x^3+x+1
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format(&[1, 1, 1]), "x^2+x+1");
        assert_eq!(format(&[2, 0, 1]), "x^2+2");
        assert_eq!(parse("x^2+x+1", 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse("2x+1", 3).unwrap(), vec![1, 2]);
        assert!(parse("1+x", 2).is_err());
        assert!(parse("x^1", 2).is_err());
        assert!(parse("1x", 2).is_err());
        assert!(parse("2x", 2).is_err());
        assert!(parse("x+x", 3).is_err());
    }
}

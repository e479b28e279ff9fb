use num_integer::Integer;

use crate::error::{Error, Result};
use crate::regex::Regex;

/// Cap on the period of a single clause.
pub const MAX_CLAUSE_PERIOD: u64 = 10_000;

/// Cap on the number of variables accepted by [`brute_sat`].
pub const MAX_BRUTE_VARIABLES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

/// A CNF formula with exactly three literals per clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf3 {
    pub vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Cnf3 {
    pub fn new(vars: usize, clauses: Vec<[Literal; 3]>) -> Result<Cnf3> {
        if clauses.is_empty() {
            return Err(Error::InvalidInput("formula has no clauses".into()));
        }
        for lit in clauses.iter().flatten() {
            if lit.var == 0 || lit.var > vars {
                return Err(Error::InvalidInput(format!(
                    "variable {} outside 1..={vars}",
                    lit.var
                )));
            }
        }
        Ok(Cnf3 { vars, clauses })
    }

    /// Builds a formula from signed DIMACS literals.
    pub fn from_signed(vars: usize, clauses: &[[i64; 3]]) -> Result<Cnf3> {
        let clauses = clauses
            .iter()
            .map(|&[a, b, c]| Ok([signed_literal(a)?, signed_literal(b)?, signed_literal(c)?]))
            .collect::<Result<Vec<_>>>()?;
        Cnf3::new(vars, clauses)
    }

    /// Reads the DIMACS subset: `c` comment lines, one `p cnf <vars>
    /// <clauses>` header, then clauses of exactly three non-zero literals
    /// each terminated by `0`.
    pub fn parse_dimacs(text: &str) -> Result<Cnf3> {
        let mut header: Option<(usize, usize)> = None;
        let mut literals = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match parts.as_slice() {
                    ["cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| bad(format!("bad header `{line}`")))?);
                continue;
            }
            if header.is_none() {
                return Err(bad("clause before the `p cnf` header".into()));
            }
            for tok in line.split_whitespace() {
                literals.push(
                    tok.parse::<i64>()
                        .map_err(|_| bad(format!("bad literal `{tok}`")))?,
                );
            }
        }
        let (vars, count) = header.ok_or_else(|| bad("missing `p cnf` header".into()))?;
        let mut clauses = Vec::new();
        for chunk in literals.split(|&l| l == 0) {
            match chunk {
                [] => continue,
                [a, b, c] => clauses.push([*a, *b, *c]),
                _ => return Err(bad(format!("clause {chunk:?} does not have 3 literals"))),
            }
        }
        if literals.last().is_some_and(|&l| l != 0) {
            return Err(bad("last clause is not terminated by 0".into()));
        }
        if clauses.len() != count {
            return Err(bad(format!(
                "header declares {count} clauses, found {}",
                clauses.len()
            )));
        }
        Cnf3::from_signed(vars, &clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.vars, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                let v = l.var as i64;
                out += &format!("{} ", if l.positive { v } else { -v });
            }
            out += "0\n";
        }
        out
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| assignment[l.var - 1] == l.positive))
    }
}

fn signed_literal(l: i64) -> Result<Literal> {
    if l == 0 {
        return Err(bad("literal 0 inside a clause".into()));
    }
    Ok(Literal {
        var: l.unsigned_abs() as usize,
        positive: l > 0,
    })
}

fn bad(msg: String) -> Error {
    Error::InvalidInput(format!("dimacs: {msg}"))
}

/// The `k`-th prime, `k ≥ 1`, with `prime(1) = 2`.
pub fn prime(k: usize) -> u64 {
    assert!(k >= 1);
    (2u64..)
        .filter(|&p| (2..).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .nth(k - 1)
        .expect("infinitely many primes")
}

/// Residue `i mod p` satisfies a literal of a variable with prime `p`:
/// positive literals need `i ≡ 1`, negative ones `i ≡ 0`.
fn satisfies(lit: &Literal, residue: u64) -> bool {
    residue == if lit.positive { 1 } else { 0 }
}

/// Unary regular expression over `{0}` that contains `0ⁱ` exactly when the
/// residues of `i` modulo the variable primes falsify some clause.
///
/// Variable `x_k` gets the `k`-th prime `p_k`; `0ⁱ` sets `x_k` true when
/// `i ≡ 1 (mod p_k)` and false when `i ≡ 0`. For each clause with period
/// `P` (product of its distinct primes) the expression contains
/// `0^c (0^P)*` for every residue `c < P` that satisfies none of its
/// literals. Hence the language is all of `0*` iff the formula is
/// unsatisfiable.
pub fn sat3_to_unary_regex(f: &Cnf3) -> Result<Regex> {
    let primes: Vec<u64> = (1..=f.vars).map(prime).collect();
    let mut parts = Vec::new();
    for clause in &f.clauses {
        let period = clause_period(clause, &primes);
        if period > MAX_CLAUSE_PERIOD {
            return Err(Error::LimitExceeded {
                what: "clause period",
                limit: MAX_CLAUSE_PERIOD,
                actual: period,
            });
        }
        let cycle = Regex::star(Regex::literal(0).power(period as usize));
        for c in 0..period {
            let falsified = clause.iter().all(|l| !satisfies(l, c % primes[l.var - 1]));
            if falsified {
                parts.push(Regex::concat(
                    Regex::literal(0).power(c as usize),
                    cycle.clone(),
                ));
            }
        }
    }
    Ok(Regex::union_all(parts))
}

fn clause_period(clause: &[Literal; 3], primes: &[u64]) -> u64 {
    clause
        .iter()
        .fold(1u64, |acc, l| acc.lcm(&primes[l.var - 1]))
}

/// Length `i` encoding an assignment: the least `i` with `i ≡ 1 (mod p_k)`
/// for true and `i ≡ 0` for false variables.
pub fn encode_assignment(assignment: &[bool]) -> u64 {
    let mut i = 0u64;
    let mut modulus = 1u64;
    for (k, &value) in assignment.iter().enumerate() {
        let p = prime(k + 1);
        let want = u64::from(value);
        while i % p != want {
            i += modulus;
        }
        modulus *= p;
    }
    i
}

/// Exhaustive satisfiability check.
pub fn brute_sat(f: &Cnf3) -> bool {
    assert!(f.vars <= MAX_BRUTE_VARIABLES, "too many variables");
    (0u64..1 << f.vars).any(|bits| {
        let assignment: Vec<bool> = (0..f.vars).map(|k| bits >> k & 1 == 1).collect();
        f.eval(&assignment)
    })
}

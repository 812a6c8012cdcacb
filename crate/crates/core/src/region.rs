//! Pointwise evaluation of semi-algebraic conditions.
//!
//! A region is a conjunction of sign conditions on real expressions. Each
//! expression is evaluated by the caller and compared with zero here, with
//! three-valued logic so values within `zero_tol` of zero are not forced to a
//! side.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Truth {
    True,
    False,
    Undecided,
}

impl Truth {
    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::Undecided, _) | (_, Truth::Undecided) => Truth::Undecided,
            _ => Truth::True,
        }
    }

    pub fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::Undecided, _) | (_, Truth::Undecided) => Truth::Undecided,
            _ => Truth::False,
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }
}

/// `expr <relation> 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub label: String,
    pub expr: f64,
    pub relation: Relation,
}

impl Constraint {
    pub fn new(label: impl Into<String>, expr: f64, relation: Relation) -> Self {
        Self {
            label: label.into(),
            expr,
            relation,
        }
    }

    /// Signed slack: positive when satisfied, negative when violated.
    pub fn slack(&self) -> f64 {
        let v = self.expr;
        match self.relation {
            Relation::Gt | Relation::Ge => v,
            Relation::Lt | Relation::Le => -v,
            Relation::Eq => -v.abs(),
            Relation::Ne => v.abs(),
        }
    }

    pub fn evaluate(&self, zero_tol: f64) -> Truth {
        let v = self.expr;
        if v.is_nan() {
            return Truth::Undecided;
        }
        let near = v.abs() <= zero_tol;
        match self.relation {
            Relation::Gt | Relation::Lt if near => Truth::Undecided,
            Relation::Ge | Relation::Le | Relation::Eq if near => Truth::True,
            Relation::Ne if near => Truth::False,
            Relation::Eq => Truth::False,
            Relation::Ne => Truth::True,
            _ if self.slack() > 0.0 => Truth::True,
            _ => Truth::False,
        }
    }

    pub fn near_zero(&self, zero_tol: f64) -> bool {
        self.expr.abs() <= zero_tol
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {:.4} {} 0", self.label, self.expr, self.relation)
    }
}

/// A named conjunction of constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionPredicate {
    pub name: String,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionEval {
    pub truth: Truth,
    /// Minimum slack over the constraints.
    pub margin: f64,
    pub touches_zero: bool,
}

impl RegionPredicate {
    pub fn new(name: impl Into<String>, constraints: Vec<Constraint>) -> Self {
        Self {
            name: name.into(),
            constraints,
        }
    }

    pub fn evaluate(&self, zero_tol: f64) -> RegionEval {
        let mut truth = Truth::True;
        let mut margin = f64::INFINITY;
        let mut touches_zero = false;
        for c in &self.constraints {
            truth = truth.and(c.evaluate(zero_tol));
            margin = margin.min(c.slack());
            touches_zero |= c.near_zero(zero_tol);
        }
        RegionEval {
            truth,
            margin,
            touches_zero,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn strict_and_nonstrict_at_zero() {
        assert_eq!(Constraint::new("a", 0.0, Relation::Gt).evaluate(TOL), Truth::Undecided);
        assert_eq!(Constraint::new("a", 1e-12, Relation::Ge).evaluate(TOL), Truth::True);
        assert_eq!(Constraint::new("a", -1e-12, Relation::Le).evaluate(TOL), Truth::True);
        assert_eq!(Constraint::new("a", 1e-12, Relation::Eq).evaluate(TOL), Truth::True);
        assert_eq!(Constraint::new("a", 1e-12, Relation::Ne).evaluate(TOL), Truth::False);
        assert_eq!(Constraint::new("a", -0.5, Relation::Ge).evaluate(TOL), Truth::False);
        assert_eq!(Constraint::new("a", -0.5, Relation::Lt).evaluate(TOL), Truth::True);
    }

    #[test]
    fn conjunction_and_margin() {
        let r = RegionPredicate::new(
            "disjunct",
            vec![
                Constraint::new("t1", -2.835, Relation::Lt),
                Constraint::new("t2", 0.155, Relation::Gt),
            ],
        );
        let e = r.evaluate(TOL);
        assert_eq!(e.truth, Truth::True);
        assert!((e.margin - 0.155).abs() < 1e-15);
        assert!(!e.touches_zero);
        let r = RegionPredicate::new(
            "edge",
            vec![
                Constraint::new("t1", -1.0, Relation::Lt),
                Constraint::new("t2", 0.0, Relation::Gt),
            ],
        );
        assert_eq!(r.evaluate(TOL).truth, Truth::Undecided);
        assert!(r.evaluate(TOL).touches_zero);
    }

    #[test]
    fn three_valued_logic() {
        assert_eq!(Truth::Undecided.and(Truth::False), Truth::False);
        assert_eq!(Truth::Undecided.or(Truth::True), Truth::True);
        assert_eq!(Truth::Undecided.or(Truth::False), Truth::Undecided);
        assert_eq!(Constraint::new("n", f64::NAN, Relation::Gt).evaluate(TOL), Truth::Undecided);
    }

    #[test]
    fn display() {
        let c = Constraint::new("P(1)", 0.4434, Relation::Gt);
        assert_eq!(c.to_string(), "P(1) = 0.4434 > 0");
    }
}

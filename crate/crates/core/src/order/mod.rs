//! Computable left orders, given as sign functions on group elements.
//!
//! An order is determined by its positive cone `P`: `g < h` iff `g^-1 h` is
//! positive. Oracles here realize `P` exactly; [`verify_order_axioms`] checks
//! the cone axioms exhaustively on a ball.

mod descriptor;
mod hyperplane;
mod magnus;

pub use descriptor::OrderDescriptor;
pub use hyperplane::{hyperplane_sign, lex_sign, pairing, surd_signum, Surd};
pub use magnus::{magnus_expand, magnus_sign, MagnusSeries, Monomial};

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::Neg;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::group::{Ball, Element, EnumConfig, Factor, GroupError, GroupKind, GroupModel};
use crate::word::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("word of length {word_len} does not fit truncation degree {degree}")]
    DegreeTooSmall { word_len: usize, degree: usize },
    #[error("hyperplane weights are all zero")]
    AllZeroWeights,
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("order {order} does not apply to {model}")]
    ModelMismatch { order: String, model: String },
    #[error("invalid order descriptor: {0}")]
    InvalidDescriptor(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
    Identity,
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Identity => Sign::Identity,
        }
    }
}

impl Sign {
    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    /// Short tag used in reports and DOT output.
    pub fn tag(self) -> &'static str {
        match self {
            Sign::Positive => "pos",
            Sign::Negative => "neg",
            Sign::Identity => "id",
        }
    }
}

pub type SignFn = Arc<dyn Fn(&GroupModel, &Element) -> Sign + Send + Sync>;

#[derive(Clone)]
pub enum OrderKind {
    Magnus,
    Hyperplane(Vec<Surd>),
    Klein,
    LexPair {
        leading: Box<OrderOracle>,
        trailing: Box<OrderOracle>,
        leading_factor: Factor,
    },
    /// Arbitrary sign function; used to exercise the verifiers.
    Custom(SignFn),
}

impl fmt::Debug for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderKind::Magnus => write!(f, "Magnus"),
            OrderKind::Hyperplane(w) => f.debug_tuple("Hyperplane").field(w).finish(),
            OrderKind::Klein => write!(f, "Klein"),
            OrderKind::LexPair {
                leading,
                trailing,
                leading_factor,
            } => f
                .debug_struct("LexPair")
                .field("leading", leading)
                .field("trailing", trailing)
                .field("leading_factor", leading_factor)
                .finish(),
            OrderKind::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct OrderOracle {
    name: String,
    model: GroupModel,
    kind: OrderKind,
    cofinal_central: Option<Element>,
}

impl OrderOracle {
    /// The Magnus order on a free group.
    pub fn magnus(model: &GroupModel) -> Result<OrderOracle, OrderError> {
        match model.kind() {
            GroupKind::Free(_) => Ok(OrderOracle::plain("magnus", model, OrderKind::Magnus)),
            _ => Err(mismatch("magnus", model)),
        }
    }

    /// Half-space cone `{<v, w> > 0}` with lexicographic tie-break on `Z^n`.
    pub fn hyperplane(model: &GroupModel, weights: Vec<Surd>) -> Result<OrderOracle, OrderError> {
        let GroupKind::FreeAbelian(n) = model.kind() else {
            return Err(mismatch("hyperplane", model));
        };
        if weights.len() != *n {
            return Err(OrderError::DimensionMismatch {
                expected: *n,
                found: weights.len(),
            });
        }
        if weights.iter().all(Surd::is_zero) {
            return Err(OrderError::AllZeroWeights);
        }
        Ok(OrderOracle::plain("hyperplane", model, OrderKind::Hyperplane(weights)))
    }

    /// The cone of the Klein bottle group generated as a semigroup by `a`, `b`.
    pub fn klein(model: &GroupModel) -> Result<OrderOracle, OrderError> {
        match model.kind() {
            GroupKind::KleinBottle => Ok(OrderOracle::plain("klein", model, OrderKind::Klein)),
            _ => Err(mismatch("klein", model)),
        }
    }

    /// Lexicographic order on a direct product: the leading factor decides,
    /// the trailing factor breaks ties. When the leading factor is `Z`, its
    /// generator spans a central cofinal subgroup and is recorded as such.
    pub fn lex_pair(
        model: &GroupModel,
        leading: OrderOracle,
        trailing: OrderOracle,
        leading_factor: Factor,
    ) -> Result<OrderOracle, OrderError> {
        let name = format!("lex({} > {})", leading.name, trailing.name);
        let (Some(lead_model), Some(trail_model)) = (model.factor(leading_factor), model.factor(leading_factor.other()))
        else {
            return Err(mismatch(&name, model));
        };
        if *lead_model != leading.model || *trail_model != trailing.model {
            return Err(mismatch(&name, model));
        }
        let cofinal_central = match lead_model.kind() {
            GroupKind::FreeAbelian(1) => model.embed(&lead_model.letter(Letter::gen(0)), leading_factor),
            _ => None,
        };
        Ok(OrderOracle {
            name,
            model: model.clone(),
            kind: OrderKind::LexPair {
                leading: Box::new(leading),
                trailing: Box::new(trailing),
                leading_factor,
            },
            cofinal_central,
        })
    }

    pub fn custom(
        name: &str,
        model: &GroupModel,
        sign: impl Fn(&GroupModel, &Element) -> Sign + Send + Sync + 'static,
    ) -> OrderOracle {
        OrderOracle::plain(name, model, OrderKind::Custom(Arc::new(sign)))
    }

    fn plain(name: &str, model: &GroupModel, kind: OrderKind) -> OrderOracle {
        OrderOracle {
            name: name.to_string(),
            model: model.clone(),
            kind,
            cofinal_central: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> OrderOracle {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn model(&self) -> &GroupModel {
        &self.model
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    /// A generator `z` with `<z>` central and cofinal, when the order was
    /// built to have one.
    pub fn cofinal_central(&self) -> Option<&Element> {
        self.cofinal_central.as_ref()
    }

    /// Sign of a canonical element of this oracle's model.
    pub fn sign(&self, g: &Element) -> Sign {
        match &self.kind {
            OrderKind::Magnus => magnus_sign(g.word()),
            OrderKind::Hyperplane(w) => {
                let v = self.model.exponents(g).expect("hyperplane order on a free abelian model");
                hyperplane_sign(&v, w).expect("weights validated at construction")
            }
            OrderKind::Klein => {
                let (n, m) = self.model.klein_coordinates(g).expect("klein order on the Klein bottle model");
                klein_sign(n, m)
            }
            OrderKind::LexPair {
                leading,
                trailing,
                leading_factor,
            } => {
                let lead = self.model.project(g, *leading_factor).expect("product model");
                match leading.sign(&lead) {
                    Sign::Identity => {
                        let trail = self.model.project(g, leading_factor.other()).expect("product model");
                        trailing.sign(&trail)
                    }
                    s => s,
                }
            }
            OrderKind::Custom(f) => f(&self.model, g),
        }
    }

    /// `Less` iff `g < h`, i.e. `g^-1 h` is positive.
    pub fn compare(&self, g: &Element, h: &Element) -> Ordering {
        match self.sign(&self.model.quotient(g, h)) {
            Sign::Positive => Ordering::Less,
            Sign::Negative => Ordering::Greater,
            Sign::Identity => Ordering::Equal,
        }
    }
}

fn mismatch(order: &str, model: &GroupModel) -> OrderError {
    OrderError::ModelMismatch {
        order: order.to_string(),
        model: model.to_string(),
    }
}

fn klein_sign(n: i64, m: i64) -> Sign {
    match (m.cmp(&0), n.cmp(&0)) {
        (Ordering::Greater, _) | (Ordering::Equal, Ordering::Greater) => Sign::Positive,
        (Ordering::Equal, Ordering::Equal) => Sign::Identity,
        _ => Sign::Negative,
    }
}

/// Sign of a Klein bottle element `b^n a^m`: positive iff `m > 0`, or `m = 0`
/// and `n > 0`.
pub fn klein_cone_sign(model: &GroupModel, g: &Element) -> Result<Sign, OrderError> {
    let (n, m) = model.klein_coordinates(g).ok_or_else(|| mismatch("klein", model))?;
    model.check_element(g)?;
    Ok(klein_sign(n, m))
}

/// Outcome of checking the cone axioms on `B(1, R)`.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub order: String,
    pub radius: usize,
    pub elements: usize,
    pub closure_pairs: usize,
    /// The identity's sign when it is not `Identity`.
    pub identity_violation: Option<Sign>,
    /// `(g, g^-1)` where not exactly one of the two is positive.
    pub partition_violations: Vec<(String, String)>,
    /// `(g, h, gh)` with `g`, `h` positive and `gh` not.
    pub closure_violations: Vec<(String, String, String)>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.identity_violation.is_none() && self.partition_violations.is_empty() && self.closure_violations.is_empty()
    }
}

/// Exhaustive check on `B(1, R)`: the identity has sign `Identity`, exactly
/// one of `g`, `g^-1` is positive for `g != 1`, and `gh` is positive for all
/// positive `g`, `h` with `|gh| <= R`.
pub fn verify_order_axioms(o: &OrderOracle, radius: usize, config: &EnumConfig) -> Result<AxiomReport, OrderError> {
    let model = o.model();
    let ball = Ball::enumerate(model, radius, config)?;
    let signs: HashMap<&Element, Sign> = ball.elements().map(|g| (g, o.sign(g))).collect();

    let id = model.identity();
    let identity_violation = Some(signs[&id]).filter(|s| *s != Sign::Identity);

    let mut partition_violations = Vec::new();
    for g in ball.elements().filter(|g| !g.is_identity()) {
        let inv = model.invert(g);
        if inv < *g {
            continue;
        }
        let count = [signs[g], signs[&inv]].iter().filter(|s| s.is_positive()).count();
        let antisymmetric = signs[&inv] == -signs[g];
        if count != 1 || !antisymmetric {
            partition_violations.push((g.to_string(), inv.to_string()));
        }
    }

    let positives: Vec<&Element> = ball.elements().filter(|g| signs[g].is_positive()).collect();
    let mut closure_pairs = 0;
    let mut closure_violations = Vec::new();
    for g in &positives {
        for h in &positives {
            if g.norm() + h.norm() > 2 * radius {
                continue;
            }
            let gh = model.mul(g, h);
            if gh.norm() > radius {
                continue;
            }
            closure_pairs += 1;
            if !signs[&gh].is_positive() {
                closure_violations.push((g.to_string(), h.to_string(), gh.to_string()));
            }
        }
    }

    Ok(AxiomReport {
        order: o.name().to_string(),
        radius,
        elements: ball.len(),
        closure_pairs,
        identity_violation,
        partition_violations,
        closure_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(m: &GroupModel, s: &str) -> Element {
        m.parse_element(s).unwrap()
    }

    fn f2_times_z() -> GroupModel {
        GroupModel::direct_product(GroupModel::free(2), GroupModel::free_abelian(1))
    }

    fn shipped_oracles() -> Vec<OrderOracle> {
        let f2 = GroupModel::free(2);
        let z2 = GroupModel::free_abelian(2);
        let z1 = GroupModel::free_abelian(1);
        let k = GroupModel::klein_bottle();
        let p = f2_times_z();
        let magnus = OrderOracle::magnus(&f2).unwrap();
        let z_order = OrderOracle::hyperplane(&z1, vec![Surd::integer(1)]).unwrap();
        vec![
            magnus.clone(),
            OrderOracle::hyperplane(&z2, vec![Surd::integer(1), Surd::new(0, 1)]).unwrap(),
            OrderOracle::hyperplane(&z2, vec![Surd::integer(1), Surd::integer(0)]).unwrap(),
            OrderOracle::klein(&k).unwrap(),
            OrderOracle::lex_pair(&p, magnus.clone(), z_order.clone(), Factor::First).unwrap(),
            OrderOracle::lex_pair(&p, z_order, magnus, Factor::Second).unwrap(),
        ]
    }

    #[test]
    fn lex_pair_examples() {
        let p = f2_times_z();
        let oracles = shipped_oracles();
        let (f2_lead, z_lead) = (&oracles[4], &oracles[5]);
        assert_eq!(f2_lead.sign(&el(&p, "aCCCCC")), Sign::Positive);
        assert_eq!(f2_lead.sign(&el(&p, "c")), Sign::Positive);
        assert_eq!(z_lead.sign(&el(&p, "Ac")), Sign::Positive);
        assert_eq!(z_lead.sign(&el(&p, "aC")), Sign::Negative);
        assert!(f2_lead.cofinal_central().is_none());
        assert_eq!(z_lead.cofinal_central().unwrap().to_string(), "c");
        let wrong = OrderOracle::lex_pair(&p, oracles[0].clone(), oracles[1].clone(), Factor::First);
        assert!(matches!(wrong, Err(OrderError::ModelMismatch { .. })));
    }

    #[test]
    fn klein_cone_examples() {
        let k = GroupModel::klein_bottle();
        let sign = |s: &str| klein_cone_sign(&k, &el(&k, s)).unwrap();
        assert_eq!(sign("a"), Sign::Positive);
        assert_eq!(sign("b"), Sign::Positive);
        // b^-1 a = a b
        assert_eq!(el(&k, "Ba"), el(&k, "ab"));
        assert_eq!(sign("Ba"), Sign::Positive);
        assert_eq!(sign("BB"), Sign::Negative);
        assert_eq!(sign("1"), Sign::Identity);
        let f2 = GroupModel::free(2);
        assert!(klein_cone_sign(&f2, &el(&f2, "a")).is_err());
    }

    #[test]
    fn magnus_comparison() {
        let f2 = GroupModel::free(2);
        let o = OrderOracle::magnus(&f2).unwrap();
        assert_eq!(o.compare(&el(&f2, "b"), &el(&f2, "a")), Ordering::Less);
        assert_eq!(o.compare(&el(&f2, "a"), &el(&f2, "a")), Ordering::Equal);
    }

    #[test]
    fn shipped_oracles_pass_axioms() {
        let cfg = EnumConfig::default();
        for (o, r) in shipped_oracles().iter().zip([5, 6, 6, 6, 4, 4]) {
            let report = verify_order_axioms(o, r, &cfg).unwrap();
            assert!(report.pass(), "{}: {report:?}", o.name());
        }
        let f2 = verify_order_axioms(&shipped_oracles()[0], 5, &cfg).unwrap();
        assert_eq!(f2.elements, 485);
    }

    #[test]
    fn broken_oracle_fails() {
        let f2 = GroupModel::free(2);
        let broken = OrderOracle::custom("all-positive", &f2, |_, g| {
            if g.is_identity() {
                Sign::Identity
            } else {
                Sign::Positive
            }
        });
        let report = verify_order_axioms(&broken, 1, &EnumConfig::default()).unwrap();
        assert!(!report.pass());
        assert!(report.partition_violations.contains(&("a".to_string(), "A".to_string())));
    }

    #[test]
    fn antisymmetry_up_to_radius_six() {
        let cfg = EnumConfig::default();
        for o in shipped_oracles() {
            let r = if o.model().rank() == 3 { 5 } else { 6 };
            let ball = Ball::enumerate(o.model(), r, &cfg).unwrap();
            for g in ball.elements().filter(|g| !g.is_identity()) {
                assert_eq!(o.sign(&o.model().invert(g)), -o.sign(g), "{}: {g}", o.name());
            }
        }
    }

    #[test]
    fn magnus_cone_is_conjugation_invariant() {
        let f2 = GroupModel::free(2);
        let o = OrderOracle::magnus(&f2).unwrap();
        let r = 5;
        let ball = Ball::enumerate(&f2, r, &EnumConfig::default()).unwrap();
        for g in ball.elements().filter(|g| o.sign(g).is_positive()) {
            for h in ball.elements() {
                let conj = f2.mul(&f2.mul(h, g), &f2.invert(h));
                if conj.norm() <= r {
                    assert!(o.sign(&conj).is_positive(), "{h} {g} {h}^-1");
                }
            }
        }
    }
}

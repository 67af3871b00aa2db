//! Homogeneous gradings on the Grassmann algebra.
//!
//! A [`GradingSpec`] splits the generators `e_1, e_2, ...` into degree
//! classes, each with a capacity (a finite dimension or infinity). Indices are
//! handed out deterministically: finite classes first, in class order, taking
//! the lowest free indices; the remaining indices cycle through the infinite
//! classes (round-robin unless a custom cycle is supplied). For two infinite
//! classes of degrees `(m, n)` this puts odd indices in degree `m` and even
//! indices in degree `n`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::exterior::{GrassmannElement, Monomial, MAX_GENERATORS};
use crate::numbers::Parity;
use crate::text::Cursor;

/// Group the degrees live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DegreeGroup {
    Z,
    Z2,
}

impl DegreeGroup {
    /// Canonical representative of `d` (residue in `{0, 1}` for `Z2`).
    pub fn normalize(self, d: i64) -> i64 {
        match self {
            DegreeGroup::Z => d,
            DegreeGroup::Z2 => d.rem_euclid(2),
        }
    }

    pub fn add(self, a: i64, b: i64) -> i64 {
        self.normalize(a + b)
    }
}

impl fmt::Display for DegreeGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeGroup::Z => "Z",
            DegreeGroup::Z2 => "Z2",
        })
    }
}

/// Dimension of a degree class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Capacity {
    Finite(u32),
    Infinite,
}

impl Capacity {
    pub fn is_infinite(self) -> bool {
        self == Capacity::Infinite
    }
}

impl fmt::Display for Capacity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Capacity::Finite(c) => write!(f, "{c}"),
            Capacity::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Capacity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(Capacity::Infinite);
        }
        match s.parse::<u32>() {
            Ok(0) => Err(Error::InvalidGrading("capacities must be positive".into())),
            Ok(c) => Ok(Capacity::Finite(c)),
            Err(_) => Err(Error::InvalidGrading(format!("bad capacity '{s}'"))),
        }
    }
}

impl Serialize for Capacity {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Capacity::Finite(c) => serializer.serialize_u32(*c),
            Capacity::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DegreeClass {
    pub degree: i64,
    pub capacity: Capacity,
}

/// How `E^{~k}` splits the indices above `k` between degree `+1` and `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub enum SplitRule {
    /// `k+1 -> +1`, `k+2 -> -1`, `k+3 -> +1`, ...
    #[default]
    Alternating,
    /// Repeating pattern, `true` meaning degree `+1`. Must contain both values.
    Periodic(Vec<bool>),
}

/// Whether an element is homogeneous, see [`GradingSpec::homogeneity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero element lies in every component.
    Zero,
    Degree(i64),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn degree(self) -> Option<i64> {
        match self {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }
}

/// Support of a grading, as far as a decision is needed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportKind {
    /// The whole group.
    Full,
    /// Some proper subset of the group.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradingSpec {
    group: DegreeGroup,
    classes: Vec<DegreeClass>,
    cycle: Vec<usize>,
    finite_total: u64,
    name: String,
}

impl GradingSpec {
    /// General constructor. `cycle` lists the infinite classes (by position
    /// in `classes`) in the order they take the indices left over after the
    /// finite classes; `None` means round-robin in class order.
    pub fn new(
        group: DegreeGroup,
        classes: Vec<DegreeClass>,
        cycle: Option<Vec<usize>>,
        name: impl Into<String>,
    ) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::InvalidGrading("no degree classes".into()));
        }
        let infinite: Vec<usize> = (0..classes.len()).filter(|&j| classes[j].capacity.is_infinite()).collect();
        if infinite.is_empty() {
            return Err(Error::InvalidGrading(
                "at least one class must be infinite-dimensional".into(),
            ));
        }
        let mut finite_total = 0u64;
        for class in &classes {
            match class.capacity {
                Capacity::Finite(0) => return Err(Error::InvalidGrading("capacities must be positive".into())),
                Capacity::Finite(c) => finite_total += c as u64,
                Capacity::Infinite => {}
            }
            if class.degree.abs() > i32::MAX as i64 {
                return Err(Error::DegreeOverflow(class.degree as i128));
            }
        }
        let cycle = cycle.unwrap_or_else(|| infinite.clone());
        if cycle.is_empty()
            || cycle.iter().any(|&j| j >= classes.len() || !classes[j].capacity.is_infinite())
            || infinite.iter().any(|j| !cycle.contains(j))
        {
            return Err(Error::InvalidGrading(
                "the index cycle must visit every infinite class and nothing else".into(),
            ));
        }
        let classes = classes
            .into_iter()
            .map(|c| DegreeClass {
                degree: group.normalize(c.degree),
                capacity: c.capacity,
            })
            .collect();
        Ok(GradingSpec {
            group,
            classes,
            cycle,
            finite_total,
            name: name.into(),
        })
    }

    /// `E_{(m,n)}^{(u,v)}`.
    pub fn two_induced(m: i64, n: i64, u: Capacity, v: Capacity) -> Result<Self> {
        if m == n {
            return Err(Error::EqualDegrees(m));
        }
        let name = if u.is_infinite() && v.is_infinite() {
            format!("2ind:{m},{n}")
        } else {
            format!("2ind:{m}@{u},{n}@{v}")
        };
        GradingSpec::new(
            DegreeGroup::Z,
            vec![DegreeClass { degree: m, capacity: u }, DegreeClass { degree: n, capacity: v }],
            None,
            name,
        )
    }

    /// `E_{(m,n)}^{(inf,inf)}`.
    pub fn two_induced_infinite(m: i64, n: i64) -> Result<Self> {
        GradingSpec::two_induced(m, n, Capacity::Infinite, Capacity::Infinite)
    }

    /// `E_{(n_1,...,n_r)}^{(v_1,...,v_r)}` with pairwise distinct degrees.
    pub fn r_induced(classes: &[(i64, Capacity)]) -> Result<Self> {
        for (i, a) in classes.iter().enumerate() {
            if classes[..i].iter().any(|b| b.0 == a.0) {
                return Err(Error::InvalidGrading(format!("degree {} appears twice", a.0)));
            }
        }
        let name = format!(
            "rind:{}",
            classes.iter().map(|(d, c)| format!("{d}@{c}")).collect::<Vec<_>>().join(",")
        );
        GradingSpec::new(
            DegreeGroup::Z,
            classes.iter().map(|&(degree, capacity)| DegreeClass { degree, capacity }).collect(),
            None,
            name,
        )
    }

    /// Every generator in degree 1.
    pub fn ecan() -> Self {
        GradingSpec::new(DegreeGroup::Z, vec![class(1, Capacity::Infinite)], None, "Ecan").unwrap()
    }

    /// `e_1..e_k` in degree 0, the rest in degree 1.
    pub fn ek(k: u32) -> Self {
        let mut classes = Vec::new();
        if k > 0 {
            classes.push(class(0, Capacity::Finite(k)));
        }
        classes.push(class(1, Capacity::Infinite));
        GradingSpec::new(DegreeGroup::Z, classes, None, format!("Ek:{k}")).unwrap()
    }

    /// `e_1..e_k` in degree 1, the rest in degree 0.
    pub fn ekstar(k: u32) -> Self {
        let mut classes = Vec::new();
        if k > 0 {
            classes.push(class(1, Capacity::Finite(k)));
        }
        classes.push(class(0, Capacity::Infinite));
        GradingSpec::new(DegreeGroup::Z, classes, None, format!("Ekstar:{k}")).unwrap()
    }

    /// Odd indices in degree 1, even indices in degree 0.
    pub fn einf() -> Self {
        GradingSpec::new(
            DegreeGroup::Z,
            vec![class(1, Capacity::Infinite), class(0, Capacity::Infinite)],
            None,
            "Einf",
        )
        .unwrap()
    }

    /// `E^{~k}`: `e_1..e_k` in degree 0, the remaining indices split between
    /// degrees `+1` and `-1` according to `rule`.
    pub fn ektilde(k: u32, rule: SplitRule) -> Result<Self> {
        let mut classes = Vec::new();
        if k > 0 {
            classes.push(class(0, Capacity::Finite(k)));
        }
        let plus = classes.len();
        classes.push(class(1, Capacity::Infinite));
        classes.push(class(-1, Capacity::Infinite));
        let (cycle, name) = match &rule {
            SplitRule::Alternating => (vec![plus, plus + 1], format!("Ektilde:{k}")),
            SplitRule::Periodic(pattern) => {
                if !pattern.contains(&true) || !pattern.contains(&false) {
                    return Err(Error::InvalidGrading(
                        "the split pattern must send infinitely many indices to each of +1 and -1".into(),
                    ));
                }
                let cycle = pattern.iter().map(|&p| if p { plus } else { plus + 1 }).collect();
                let text: String = pattern.iter().map(|&p| if p { '+' } else { '-' }).collect();
                (cycle, format!("Ektilde:{k}:{text}"))
            }
        };
        GradingSpec::new(DegreeGroup::Z, classes, Some(cycle), name)
    }

    /// The `Z2`-grading obtained by reducing every degree mod 2.
    pub fn induced_z2(&self) -> Result<Self> {
        if self.group != DegreeGroup::Z {
            return Err(Error::InvalidArgument(format!("{} is already Z2-graded", self.name)));
        }
        GradingSpec::new(
            DegreeGroup::Z2,
            self.classes.clone(),
            Some(self.cycle.clone()),
            format!("z2({})", self.name),
        )
    }

    pub fn group(&self) -> DegreeGroup {
        self.group
    }

    pub fn classes(&self) -> &[DegreeClass] {
        &self.classes
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `(m, n)` when this is `E_{(m,n)}^{(inf,inf)}` with the default index split.
    pub fn as_two_induced_infinite(&self) -> Option<(i64, i64)> {
        match (self.group, self.classes.as_slice()) {
            (DegreeGroup::Z, [a, b])
                if a.capacity.is_infinite() && b.capacity.is_infinite() && self.cycle == [0, 1] =>
            {
                Some((a.degree, b.degree))
            }
            _ => None,
        }
    }

    /// Degree lists of a Z-grading whose classes are all infinite.
    pub fn infinite_degrees(&self) -> Option<Vec<i64>> {
        if self.group != DegreeGroup::Z || self.classes.iter().any(|c| !c.capacity.is_infinite()) {
            return None;
        }
        Some(self.classes.iter().map(|c| c.degree).collect())
    }

    /// Position of the class that owns `e_index`.
    pub fn class_of_generator(&self, index: u32) -> usize {
        assert!(index >= 1, "generator indices start at 1");
        let mut offset = index as u64 - 1;
        if offset < self.finite_total {
            for (j, c) in self.classes.iter().enumerate() {
                if let Capacity::Finite(cap) = c.capacity {
                    if offset < cap as u64 {
                        return j;
                    }
                    offset -= cap as u64;
                }
            }
            unreachable!("offset below the finite total always lands in a finite class");
        }
        let rest = (index as u64 - 1 - self.finite_total) as usize;
        self.cycle[rest % self.cycle.len()]
    }

    /// `||e_index||`.
    pub fn degree_of_generator(&self, index: u32) -> i64 {
        self.classes[self.class_of_generator(index)].degree
    }

    /// Degrees of `e_1..e_n`, position `i` holding `||e_{i+1}||`.
    pub fn generator_degrees(&self, n: u32) -> Vec<i64> {
        (1..=n).map(|i| self.degree_of_generator(i)).collect()
    }

    /// Sum of the generator degrees; the unit has degree 0.
    pub fn degree_of_monomial(&self, m: Monomial) -> i64 {
        let total = m.indices().map(|i| self.degree_of_generator(i)).sum();
        self.group.normalize(total)
    }

    pub fn homogeneity(&self, x: &GrassmannElement) -> Homogeneity {
        let mut degrees = x.terms().map(|(m, _)| self.degree_of_monomial(*m));
        match degrees.next() {
            None => Homogeneity::Zero,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    /// Whether the support is the whole group.
    pub fn support_kind(&self) -> SupportKind {
        let full = match self.group {
            DegreeGroup::Z2 => self.classes.iter().any(|c| c.degree != 0),
            DegreeGroup::Z => self.z_support_is_full(),
        };
        if full {
            SupportKind::Full
        } else {
            SupportKind::Partial
        }
    }

    pub fn is_full_support(&self) -> bool {
        self.support_kind() == SupportKind::Full
    }

    // Infinite classes generate d*Z exactly when they carry both signs, d being
    // the gcd of their degrees; finite classes then only shift by bounded
    // amounts, so the support is Z iff those shifts hit every residue mod d.
    fn z_support_is_full(&self) -> bool {
        let infinite: Vec<i64> = self
            .classes
            .iter()
            .filter(|c| c.capacity.is_infinite())
            .map(|c| c.degree)
            .collect();
        if !infinite.iter().any(|&d| d > 0) || !infinite.iter().any(|&d| d < 0) {
            return false;
        }
        let d = infinite.iter().fold(0i64, |g, &x| g.gcd(&x)).unsigned_abs();
        let mut reachable = vec![false; d as usize];
        reachable[0] = true;
        for c in &self.classes {
            if let Capacity::Finite(cap) = c.capacity {
                let step = c.degree.rem_euclid(d as i64) as usize;
                let mut next = reachable.clone();
                let mut shifted = reachable.clone();
                for _ in 0..cap.min(d as u32) {
                    shifted = (0..d as usize)
                        .map(|r| shifted[(r + d as usize - step) % d as usize])
                        .collect();
                    for r in 0..d as usize {
                        next[r] |= shifted[r];
                    }
                }
                reachable = next;
            }
        }
        reachable.iter().all(|&r| r)
    }

    /// How many monomials [`GradingSpec::monomials_of_degree`] would list
    /// with no index excluded and no limit, saturating at `u64::MAX`.
    pub fn count_monomials(&self, degree: i64, max_len: usize, n: u32) -> u64 {
        let n = n.min(MAX_GENERATORS);
        let mut available = vec![0u128; self.classes.len()];
        for i in 1..=n {
            available[self.class_of_generator(i)] += 1;
        }
        // (length, degree) -> number of ways
        let mut states: HashMap<(usize, i64), u128> = HashMap::from([((0, 0), 1)]);
        for (class, &a) in self.classes.iter().zip(&available) {
            let mut next: HashMap<(usize, i64), u128> = HashMap::new();
            for (&(len, deg), &ways) in &states {
                for c in 0..=(a as usize).min(max_len - len) {
                    let key = (len + c, self.group.normalize(deg + c as i64 * class.degree));
                    let add = ways.saturating_mul(num_integer::binomial(a, c as u128));
                    let slot = next.entry(key).or_insert(0);
                    *slot = slot.saturating_add(add);
                }
            }
            states = next;
        }
        let target = self.group.normalize(degree);
        let total = states
            .iter()
            .filter(|((_, d), _)| *d == target)
            .fold(0u128, |acc, (_, &w)| acc.saturating_add(w));
        total.min(u64::MAX as u128) as u64
    }

    /// Monomials of degree `degree` with length at most `max_len`, built from
    /// `e_1..e_n` minus the indices in `forbidden`; ordered by length, then
    /// lexicographically. At most `limit` are returned.
    pub fn monomials_of_degree(
        &self,
        degree: i64,
        max_len: usize,
        n: u32,
        limit: Option<usize>,
        forbidden: Monomial,
    ) -> Vec<Monomial> {
        let n = n.min(MAX_GENERATORS);
        let target = self.group.normalize(degree);
        let allowed: Vec<(u32, i64)> = (1..=n)
            .filter(|&i| !forbidden.contains(i))
            .map(|i| (i, self.degree_of_generator(i)))
            .collect();
        let mut search = Enumeration {
            group: self.group,
            allowed: &allowed,
            dmin: allowed.iter().map(|a| a.1).min().unwrap_or(0),
            dmax: allowed.iter().map(|a| a.1).max().unwrap_or(0),
            target,
            limit: limit.unwrap_or(usize::MAX),
            out: Vec::new(),
        };
        for len in 0..=max_len.min(allowed.len()) {
            if search.out.len() >= search.limit {
                break;
            }
            search.descend(0, len, 0, 0);
        }
        search.out
    }

    /// The shortest monomial of the given degree (and length parity, if
    /// given) avoiding `forbidden`, with length in `min_len..=max_len` and
    /// indices at most `n`.
    ///
    /// The search runs over per-class generator counts: ties in length go to
    /// the lexicographically smallest count vector, and each class contributes
    /// its lowest free indices.
    pub fn find_monomial(
        &self,
        degree: i64,
        parity: Option<Parity>,
        forbidden: Monomial,
        n: u32,
        min_len: usize,
        max_len: usize,
    ) -> Option<Monomial> {
        let n = n.min(MAX_GENERATORS);
        let mut available: Vec<Vec<u32>> = vec![Vec::new(); self.classes.len()];
        for i in (1..=n).filter(|&i| !forbidden.contains(i)) {
            available[self.class_of_generator(i)].push(i);
        }
        let mut profile = ProfileSearch {
            group: self.group,
            degrees: self.classes.iter().map(|c| c.degree).collect(),
            available: available.iter().map(Vec::len).collect(),
            target: self.group.normalize(degree),
            parity,
            min_len,
            max_len,
            counts: Vec::with_capacity(self.classes.len()),
            best: None,
        };
        profile.descend(0, 0, 0);
        let (_, counts) = profile.best?;
        let indices = counts
            .iter()
            .zip(&available)
            .flat_map(|(&c, avail)| avail[..c].iter().copied());
        let bits = indices.fold(0u128, |acc, i| acc | (1u128 << (i - 1)));
        Some(Monomial::from_bits(bits))
    }

    /// Up to `count` pairwise disjoint monomials of the given degree and
    /// parity, each found by [`GradingSpec::find_monomial`] on the indices
    /// left free by its predecessors. Returns what was found; the caller
    /// compares its length with `count`.
    pub fn disjoint_family(
        &self,
        degree: i64,
        parity: Option<Parity>,
        count: usize,
        n: u32,
        max_len: usize,
    ) -> Vec<Monomial> {
        let mut used = Monomial::ONE;
        let mut family: Vec<Monomial> = Vec::with_capacity(count);
        while family.len() < count {
            // The unit is disjoint from everything but can only be taken once.
            let min_len = usize::from(family.iter().any(|m| m.is_one()));
            match self.find_monomial(degree, parity, used, n, min_len, max_len) {
                Some(m) => {
                    used = Monomial::from_bits(used.bits() | m.bits());
                    family.push(m);
                }
                None => break,
            }
        }
        family
    }
}

fn class(degree: i64, capacity: Capacity) -> DegreeClass {
    DegreeClass { degree, capacity }
}

struct Enumeration<'a> {
    group: DegreeGroup,
    allowed: &'a [(u32, i64)],
    dmin: i64,
    dmax: i64,
    target: i64,
    limit: usize,
    out: Vec<Monomial>,
}

impl Enumeration<'_> {
    fn descend(&mut self, start: usize, remaining: usize, bits: u128, degree: i64) {
        if self.out.len() >= self.limit {
            return;
        }
        if remaining == 0 {
            if self.group.normalize(degree) == self.target {
                self.out.push(Monomial::from_bits(bits));
            }
            return;
        }
        if self.group == DegreeGroup::Z {
            let gap = self.target - degree;
            let r = remaining as i64;
            if gap < r * self.dmin || gap > r * self.dmax {
                return;
            }
        }
        for pos in start..=self.allowed.len() - remaining {
            let (index, d) = self.allowed[pos];
            self.descend(pos + 1, remaining - 1, bits | (1u128 << (index - 1)), degree + d);
            if self.out.len() >= self.limit {
                return;
            }
        }
    }
}

struct ProfileSearch {
    group: DegreeGroup,
    degrees: Vec<i64>,
    available: Vec<usize>,
    target: i64,
    parity: Option<Parity>,
    min_len: usize,
    max_len: usize,
    counts: Vec<usize>,
    best: Option<(usize, Vec<usize>)>,
}

impl ProfileSearch {
    fn descend(&mut self, class: usize, length: usize, degree: i64) {
        if let Some((best, _)) = &self.best {
            if length >= *best {
                return;
            }
        }
        if class == self.degrees.len() {
            let parity_ok = self.parity.is_none_or(|p| p.matches(length as u64));
            if length >= self.min_len && parity_ok && self.group.normalize(degree) == self.target {
                self.best = Some((length, self.counts.clone()));
            }
            return;
        }
        let most = self.available[class].min(self.max_len - length);
        for c in 0..=most {
            self.counts.push(c);
            self.descend(class + 1, length + c, degree + c as i64 * self.degrees[class]);
            self.counts.pop();
        }
    }
}

impl fmt::Display for GradingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for GradingSpec {
    type Err = Error;

    /// Parses `2ind:-2,3`, `2ind:-2@5,3@inf`, `Ek:3`, `Ekstar:2`, `Einf`,
    /// `Ecan`, `Ektilde:2`, `Ektilde:2:++-` and `rind:-1@inf,0@2,4@inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, body) = match s.split_once(':') {
            Some((h, b)) => (h, Some(b)),
            None => (s, None),
        };
        let body_or_err = || {
            body.ok_or_else(|| Error::from(ParseError::new(s.len(), format!("'{head}' needs ':' and parameters"))))
        };
        match head {
            "Ecan" if body.is_none() => Ok(GradingSpec::ecan()),
            "Einf" if body.is_none() => Ok(GradingSpec::einf()),
            "Ek" => Ok(GradingSpec::ek(parse_count(body_or_err()?, head.len() + 1)?)),
            "Ekstar" => Ok(GradingSpec::ekstar(parse_count(body_or_err()?, head.len() + 1)?)),
            "Ektilde" => {
                let body = body_or_err()?;
                let (k, rule) = match body.split_once(':') {
                    None => (body, SplitRule::Alternating),
                    Some((k, pattern)) => {
                        let bits = pattern
                            .chars()
                            .map(|c| match c {
                                '+' => Ok(true),
                                '-' => Ok(false),
                                _ => Err(ParseError::new(head.len() + 2 + k.len(), "split pattern uses '+' and '-' only")),
                            })
                            .collect::<std::result::Result<Vec<_>, _>>()?;
                        (k, SplitRule::Periodic(bits))
                    }
                };
                GradingSpec::ektilde(parse_count(k, head.len() + 1)?, rule)
            }
            "2ind" => {
                let classes = parse_classes(body_or_err()?, head.len() + 1)?;
                match classes.as_slice() {
                    [(m, u), (n, v)] => GradingSpec::two_induced(*m, *n, *u, *v),
                    _ => Err(ParseError::new(head.len() + 1, "2ind takes exactly two degrees").into()),
                }
            }
            "rind" => GradingSpec::r_induced(&parse_classes(body_or_err()?, head.len() + 1)?),
            _ => Err(ParseError::new(0, format!("unknown grading '{s}'")).into()),
        }
    }
}

fn parse_count(text: &str, offset: usize) -> Result<u32> {
    text.trim()
        .parse::<u32>()
        .map_err(|_| ParseError::new(offset, format!("expected a nonnegative integer, got '{text}'")).into())
}

fn parse_classes(body: &str, offset: usize) -> Result<Vec<(i64, Capacity)>> {
    let mut cur = Cursor::new(body);
    let mut out = Vec::new();
    loop {
        let negative = cur.eat(b'-');
        let at = cur.pos();
        let magnitude = cur.unsigned().map_err(|e| ParseError::new(e.position + offset, e.message))?;
        if magnitude > i32::MAX as u64 {
            return Err(ParseError::new(at + offset, "degree out of range").into());
        }
        let degree = if negative { -(magnitude as i64) } else { magnitude as i64 };
        let capacity = if cur.eat(b'@') {
            let start = cur.pos();
            while cur.peek_raw().is_some_and(|b| b != b',') {
                cur.bump();
            }
            body[start..cur.pos()].parse::<Capacity>()?
        } else {
            Capacity::Infinite
        };
        out.push((degree, capacity));
        if cur.at_end() {
            return Ok(out);
        }
        if !cur.eat(b',') {
            return Err(ParseError::new(cur.pos() + offset, "expected ','").into());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::mul_monomials;

    fn mono(indices: &[u32]) -> Monomial {
        Monomial::from_indices(indices.iter().copied()).unwrap()
    }

    fn spec(s: &str) -> GradingSpec {
        s.parse().unwrap()
    }

    #[test]
    fn generator_degrees_follow_the_conventions() {
        assert_eq!(spec("2ind:-2,3").degree_of_generator(5), -2);
        assert_eq!(spec("2ind:-2,3").degree_of_generator(4), 3);
        assert_eq!(GradingSpec::ek(3).degree_of_generator(2), 0);
        assert_eq!(GradingSpec::ek(3).degree_of_generator(4), 1);
        assert_eq!(GradingSpec::einf().degree_of_generator(4), 0);
        assert_eq!(GradingSpec::einf().degree_of_generator(3), 1);
        assert_eq!(GradingSpec::ekstar(2).generator_degrees(4), vec![1, 1, 0, 0]);
        assert_eq!(GradingSpec::ecan().generator_degrees(3), vec![1, 1, 1]);
        let tilde = GradingSpec::ektilde(2, SplitRule::Alternating).unwrap();
        assert_eq!(tilde.generator_degrees(7), vec![0, 0, 1, -1, 1, -1, 1]);
        let custom = spec("Ektilde:1:++-");
        assert_eq!(custom.generator_degrees(7), vec![0, 1, 1, -1, 1, 1, -1]);
        let r = spec("rind:-1@inf,0@2,4@inf");
        assert_eq!(r.generator_degrees(6), vec![0, 0, -1, 4, -1, 4]);
        let finite = spec("2ind:-2@2,3@inf");
        assert_eq!(finite.generator_degrees(5), vec![-2, -2, 3, 3, 3]);
    }

    #[test]
    fn monomial_degrees() {
        let s = spec("2ind:-2,3");
        assert_eq!(s.degree_of_monomial(mono(&[1, 2])), 1);
        assert_eq!(s.degree_of_monomial(mono(&[1, 2, 3])), -1);
        assert_eq!(s.degree_of_monomial(Monomial::ONE), 0);
    }

    #[test]
    fn homogeneity() {
        let s = spec("2ind:-1,1");
        let x: GrassmannElement = "e1*e3".parse().unwrap();
        assert_eq!(s.homogeneity(&x), Homogeneity::Degree(-2));
        let y: GrassmannElement = "e1 + e2".parse().unwrap();
        assert_eq!(s.homogeneity(&y), Homogeneity::Inhomogeneous);
        assert_eq!(s.homogeneity(&GrassmannElement::zero()), Homogeneity::Zero);
    }

    #[test]
    fn components() {
        let s = spec("2ind:-2,3");
        let a1 = s.monomials_of_degree(1, 2, 4, None, Monomial::ONE);
        assert_eq!(a1, vec![mono(&[1, 2]), mono(&[1, 4]), mono(&[2, 3]), mono(&[3, 4])]);
        let limited = s.monomials_of_degree(1, 2, 4, Some(2), Monomial::ONE);
        assert_eq!(limited, vec![mono(&[1, 2]), mono(&[1, 4])]);
        let avoiding = s.monomials_of_degree(1, 2, 4, None, mono(&[1]));
        assert_eq!(avoiding, vec![mono(&[2, 3]), mono(&[3, 4])]);
        for len in 0..=6 {
            assert!(spec("2ind:-4,6").monomials_of_degree(3, len, 12, None, Monomial::ONE).is_empty());
        }
        assert!(GradingSpec::ecan().monomials_of_degree(-1, 5, 10, None, Monomial::ONE).is_empty());
        assert_eq!(
            GradingSpec::ecan().monomials_of_degree(0, 5, 10, None, Monomial::ONE),
            vec![Monomial::ONE]
        );
    }

    /// Brute force over all subsets, for comparison with the pruned search.
    fn all_of_degree(s: &GradingSpec, degree: i64, max_len: usize, n: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = (0u128..(1 << n))
            .map(Monomial::from_bits)
            .filter(|m| m.len() <= max_len && s.degree_of_monomial(*m) == s.group().normalize(degree))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for text in ["2ind:-2,3", "2ind:-1,1", "Ek:2", "Ektilde:2", "rind:-1@inf,0@2,4@inf"] {
            let s = spec(text);
            let z2 = s.induced_z2().unwrap();
            for degree in -4..=4 {
                assert_eq!(
                    s.monomials_of_degree(degree, 4, 9, None, Monomial::ONE),
                    all_of_degree(&s, degree, 4, 9),
                    "{text} degree {degree}"
                );
            }
            for degree in 0..=1 {
                assert_eq!(
                    z2.monomials_of_degree(degree, 3, 8, None, Monomial::ONE),
                    all_of_degree(&z2, degree, 3, 8)
                );
                assert_eq!(z2.count_monomials(degree, 3, 8), all_of_degree(&z2, degree, 3, 8).len() as u64);
            }
        }
    }

    #[test]
    fn counting_matches_brute_force() {
        for text in ["2ind:-2,3", "2ind:-1,1", "Ek:2", "Ekstar:3", "Ektilde:2", "rind:-1@inf,0@2,4@inf"] {
            let s = spec(text);
            for degree in -5..=5 {
                for max_len in [0, 2, 5] {
                    assert_eq!(
                        s.count_monomials(degree, max_len, 10),
                        all_of_degree(&s, degree, max_len, 10).len() as u64,
                        "{text} degree {degree} max_len {max_len}"
                    );
                }
            }
        }
        assert_eq!(spec("2ind:-1,1").count_monomials(0, 128, 128), {
            // Equal numbers of odd and even indices: sum of C(64, k)^2 = C(128, 64).
            let c: u128 = num_integer::binomial(128u128, 64);
            c.min(u64::MAX as u128) as u64
        });
    }

    #[test]
    fn grading_is_compatible_with_products() {
        let s = spec("rind:-3@inf,0@2,5@inf");
        for a in 0u128..256 {
            for b in (0u128..256).step_by(7) {
                let (a, b) = (Monomial::from_bits(a), Monomial::from_bits(b));
                let (sign, p) = mul_monomials(a, b);
                if sign != 0 {
                    assert_eq!(s.degree_of_monomial(p), s.degree_of_monomial(a) + s.degree_of_monomial(b));
                }
            }
        }
    }

    #[test]
    fn odd_degrees_force_length_parity() {
        for (m, n) in [(-1, 3), (-3, 5), (-1, 1)] {
            let s = GradingSpec::two_induced_infinite(m, n).unwrap();
            for degree in -6..=6i64 {
                for w in s.monomials_of_degree(degree, 6, 12, None, Monomial::ONE) {
                    assert_eq!(w.len() as i64 % 2, degree.rem_euclid(2));
                }
            }
        }
    }

    #[test]
    fn induced_z2_reduces_degrees() {
        let s = spec("2ind:-1,1").induced_z2().unwrap();
        assert_eq!(s.generator_degrees(6), vec![1; 6]);
        assert_eq!(s.generator_degrees(6), GradingSpec::ecan().induced_z2().unwrap().generator_degrees(6));
        let tilde = GradingSpec::ektilde(2, SplitRule::Alternating).unwrap().induced_z2().unwrap();
        assert_eq!(tilde.generator_degrees(7), GradingSpec::ek(2).induced_z2().unwrap().generator_degrees(7));
        assert!(s.induced_z2().is_err());
        let z = spec("2ind:-2,3");
        let z2 = z.induced_z2().unwrap();
        for bits in 0u128..512 {
            let m = Monomial::from_bits(bits);
            assert_eq!(z2.degree_of_monomial(m), z.degree_of_monomial(m).rem_euclid(2));
        }
    }

    #[test]
    fn full_support() {
        assert!(spec("2ind:-2,3").is_full_support());
        assert!(!spec("2ind:-4,6").is_full_support());
        assert!(!spec("2ind:-2,2").is_full_support());
        assert!(!spec("2ind:2,3").is_full_support());
        assert!(!spec("2ind:-2@5,3@inf").is_full_support());
        assert!(!GradingSpec::ecan().is_full_support());
        assert!(!GradingSpec::einf().is_full_support());
        assert!(spec("Ektilde:2").is_full_support());
        // 2Z from the infinite classes, shifted by the finite odd class.
        assert!(spec("rind:-2@inf,1@1,2@inf").is_full_support());
        assert!(spec("2ind:-1,1").induced_z2().unwrap().is_full_support());
        assert!(!GradingSpec::ekstar(0).induced_z2().unwrap().is_full_support());
    }

    #[test]
    fn targeted_monomials() {
        let s = spec("2ind:-2,3");
        // Degree 2 with odd length needs five odd and four even indices.
        let w = s.find_monomial(2, Some(Parity::Odd), Monomial::ONE, 16, 0, 9).unwrap();
        assert_eq!(w, mono(&[1, 2, 3, 4, 5, 6, 7, 8, 9]));
        assert!(s.find_monomial(2, Some(Parity::Odd), Monomial::ONE, 16, 0, 8).is_none());
        assert_eq!(s.find_monomial(2, Some(Parity::Even), Monomial::ONE, 16, 0, 9), Some(mono(&[1, 2, 3, 4])));
        let family = s.disjoint_family(0, Some(Parity::Even), 3, 30, 10);
        assert_eq!(family.len(), 3);
        assert!(family[0].is_one());
        assert!(family[1].is_disjoint(family[2]));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(spec("Ecan"), GradingSpec::ecan());
        assert_eq!(spec("Ek:0").generator_degrees(3), vec![1, 1, 1]);
        assert!(matches!("2ind:3,3".parse::<GradingSpec>(), Err(Error::EqualDegrees(3))));
        assert!("rind:1@inf,1@inf".parse::<GradingSpec>().is_err());
        assert!("rind:1@2".parse::<GradingSpec>().is_err());
        assert!("Ektilde:2:+++".parse::<GradingSpec>().is_err());
        assert!("E".parse::<GradingSpec>().is_err());
        assert!("2ind:-2,x".parse::<GradingSpec>().is_err());
        assert!("2ind:-2@0,3".parse::<GradingSpec>().is_err());
        assert_eq!(spec("2ind:-2,3").to_string(), "2ind:-2,3");
        assert_eq!(spec("2ind:-2@5,3").to_string(), "2ind:-2@5,3@inf");
    }
}

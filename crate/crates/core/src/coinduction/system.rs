use std::collections::HashMap;
use std::sync::RwLock;

use super::config::{CoinductionConfig, OrbitBijection, ZPoint, ZSpec};
use crate::error::{Error, Result};
use crate::free_group::{FoldedSolver, FreeGroup, GroupOracle, Homomorphism, PreimageSolver, SubgroupGraph, Word};

/// Upper bound on enumeration indices scanned while growing a transversal.
const MAX_SCAN: u64 = 50_000_000;

type OrbitKey = (usize, Word);

/// How orbit membership in `G × {z}` is decided.
enum Membership {
    /// `G` is F₂ itself: orbits are right cosets of a subgroup of F₂ after a
    /// change of coordinates, so a folded graph gives a canonical key.
    Folded { theta_iota: SubgroupGraph },
    /// Generic oracle: one preimage problem per candidate representative.
    Search,
}

#[derive(Default)]
struct Fiber {
    reps: Vec<Word>,
    keys: HashMap<OrbitKey, usize>,
    scanned: u64,
}

/// The coinduction data of a configured `(G, θ, ι, Z)`: the cocycle `α`, the
/// free `ι`-twisted action of F₂ on `G × Z`, its greedy transversal `c`, the
/// cocycles `δ` and `γ`, and the bijections `ψ_z`.
pub struct Coinduction<G: GroupOracle<Elem = Word> = FreeGroup> {
    group: G,
    theta: Homomorphism<Word>,
    iota: Homomorphism<Word>,
    z_spec: ZSpec,
    bijection: OrbitBijection,
    depth: usize,
    theta_solver: Box<dyn PreimageSolver<Word>>,
    iota_solver: FoldedSolver,
    membership: Membership,
    fibers: RwLock<HashMap<ZPoint, Fiber>>,
}

impl Coinduction<FreeGroup> {
    pub fn new(config: &CoinductionConfig) -> Result<Self> {
        Coinduction::with_group(
            FreeGroup,
            Homomorphism::new(config.theta[0].clone(), config.theta[1].clone()),
            Homomorphism::new(config.iota[0].clone(), config.iota[1].clone()),
            config.z,
            config.orbit_bijection,
            config.transversal_depth,
        )
    }
}

impl<G: GroupOracle<Elem = Word>> Coinduction<G> {
    pub fn with_group(
        group: G,
        theta: Homomorphism<Word>,
        iota: Homomorphism<Word>,
        z_spec: ZSpec,
        bijection: OrbitBijection,
        depth: usize,
    ) -> Result<Self> {
        let iota_solver = FoldedSolver::new(&iota)?;
        if !iota_solver.graph().has_infinite_index() {
            return Err(Error::Config(format!(
                "ι = ({}, {}) has finite-index image",
                iota.a, iota.b
            )));
        }
        let theta_solver = group.preimage_solver(&theta)?;
        let membership = if group.is_free_on_words() {
            let theta_iota = SubgroupGraph::new(&[theta.apply(&group, &iota.a), theta.apply(&group, &iota.b)]);
            if !theta_iota.is_free_basis() {
                return Err(Error::NotInjective(vec![theta.a.clone(), theta.b.clone()]));
            }
            Membership::Folded { theta_iota }
        } else {
            Membership::Search
        };
        if depth == 0 {
            return Err(Error::Config("transversal depth must be positive".into()));
        }
        Ok(Coinduction {
            group,
            theta,
            iota,
            z_spec,
            bijection,
            depth,
            theta_solver,
            iota_solver,
            membership,
            fibers: RwLock::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn iota(&self) -> &Homomorphism<Word> {
        &self.iota
    }

    pub fn theta(&self) -> &Homomorphism<Word> {
        &self.theta
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn base_point(&self) -> ZPoint {
        ZPoint::base(self.z_spec)
    }

    fn mul(&self, x: &Word, y: &Word) -> Word {
        self.group.mul(x, y)
    }

    fn inv(&self, x: &Word) -> Word {
        self.group.inv(x)
    }

    /// `b : F₂ → G`.
    pub fn orbit_bijection(&self, u: &Word) -> Word {
        self.group.enumerate(self.bijection.permute(u.rank()))
    }

    /// `b⁻¹ : G → F₂`.
    pub fn orbit_bijection_inv(&self, g: &Word) -> Word {
        Word::unrank(self.bijection.permute(self.group.rank(g)))
    }

    /// `g · z`.
    pub fn act_z(&self, g: &Word, z: &ZPoint) -> ZPoint {
        match z {
            ZPoint::Singleton => ZPoint::Singleton,
            ZPoint::PointMass(h) => ZPoint::PointMass(self.mul(g, h)),
        }
    }

    /// The F₂-action on `Z`.
    pub fn f_act_z(&self, f: &Word, z: &ZPoint) -> ZPoint {
        match z {
            ZPoint::Singleton => ZPoint::Singleton,
            ZPoint::PointMass(h) => {
                ZPoint::PointMass(self.orbit_bijection(&f.mul(&self.orbit_bijection_inv(h))))
            }
        }
    }

    /// `α(f, z)`, with `α(f, z) · z = f · z`.
    pub fn alpha(&self, f: &Word, z: &ZPoint) -> Word {
        match z {
            ZPoint::Singleton => self.theta.apply(&self.group, f),
            ZPoint::PointMass(h) => {
                let moved = self.orbit_bijection(&f.mul(&self.orbit_bijection_inv(h)));
                self.mul(&moved, &self.inv(h))
            }
        }
    }

    /// The `u` with `α(u, z) = x`, if any.
    pub fn alpha_inverse(&self, z: &ZPoint, x: &Word) -> Result<Option<Word>> {
        match z {
            ZPoint::Singleton => self.theta_solver.solve(x),
            ZPoint::PointMass(h) => {
                let moved = self.orbit_bijection_inv(&self.mul(x, h));
                Ok(Some(moved.mul(&self.orbit_bijection_inv(h).inv())))
            }
        }
    }

    /// `f · (g, z) = (g · α(ι(f), g⁻¹ · z)⁻¹, z)`; returns the `G` coordinate.
    pub fn f_action(&self, f: &Word, g: &Word, z: &ZPoint) -> Word {
        let zg = self.act_z(&self.inv(g), z);
        let a = self.alpha(&self.iota.image(f), &zg);
        self.mul(g, &self.inv(&a))
    }

    /// The `f` with `f · (c, z) = (target, z)`, if `target` lies in the orbit of `c`.
    pub fn solve_orbit(&self, target: &Word, c: &Word, z: &ZPoint) -> Result<Option<Word>> {
        let zc = self.act_z(&self.inv(c), z);
        let x = self.mul(&self.inv(target), c);
        match self.alpha_inverse(&zc, &x)? {
            Some(u) => self.iota_solver.solve(&u),
            None => Ok(None),
        }
    }

    fn orbit_key(&self, theta_iota: &SubgroupGraph, g: &Word, z: &ZPoint) -> OrbitKey {
        match z {
            ZPoint::Singleton => theta_iota.coset_position(&g.inv()),
            ZPoint::PointMass(h) => {
                let coords = self.orbit_bijection_inv(&g.inv().mul(h));
                self.iota_solver.graph().coset_position(&coords)
            }
        }
    }

    fn classify(&self, fiber: &Fiber, g: &Word, z: &ZPoint) -> Result<Option<usize>> {
        match &self.membership {
            Membership::Folded { theta_iota } => Ok(fiber.keys.get(&self.orbit_key(theta_iota, g, z)).copied()),
            Membership::Search => {
                for (i, c) in fiber.reps.iter().enumerate() {
                    if self.solve_orbit(g, c, z)?.is_some() {
                        return Ok(Some(i));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Scans the enumeration of `G` until `stop` holds or index `until` is classified.
    fn extend(&self, fiber: &mut Fiber, z: &ZPoint, until: u64, stop: impl Fn(&Fiber) -> bool) -> Result<()> {
        while fiber.scanned <= until && !stop(fiber) {
            if fiber.scanned >= MAX_SCAN {
                return Err(Error::Undecidable { radius: MAX_SCAN as usize });
            }
            let g = self.group.enumerate(fiber.scanned);
            if self.classify(fiber, &g, z)?.is_none() {
                if fiber.reps.len() == self.depth {
                    return Err(Error::InsufficientDepth { depth: self.depth, element: format!("{g:?}") });
                }
                if let Membership::Folded { theta_iota } = &self.membership {
                    fiber.keys.insert(self.orbit_key(theta_iota, &g, z), fiber.reps.len());
                }
                fiber.reps.push(g);
            }
            fiber.scanned += 1;
        }
        Ok(())
    }

    fn with_fiber<T>(&self, z: &ZPoint, f: impl FnOnce(&mut Fiber) -> Result<T>) -> Result<T> {
        let mut fibers = self.fibers.write().expect("fiber cache poisoned");
        f(fibers.entry(z.clone()).or_default())
    }

    /// `c(0, z), …, c(n − 1, z)`.
    pub fn transversal(&self, n: usize, z: &ZPoint) -> Result<Vec<Word>> {
        if n > self.depth {
            return Err(Error::InsufficientDepth { depth: self.depth, element: format!("c({})", n - 1) });
        }
        if let Some(f) = self.fibers.read().expect("fiber cache poisoned").get(z) {
            if f.reps.len() >= n {
                return Ok(f.reps[..n].to_vec());
            }
        }
        self.with_fiber(z, |fiber| {
            self.extend(fiber, z, u64::MAX, |f| f.reps.len() >= n)?;
            Ok(fiber.reps[..n].to_vec())
        })
    }

    /// `c(n, z)`.
    pub fn c(&self, n: usize, z: &ZPoint) -> Result<Word> {
        if let Some(f) = self.fibers.read().expect("fiber cache poisoned").get(z) {
            if let Some(c) = f.reps.get(n) {
                return Ok(c.clone());
            }
        }
        Ok(self.transversal(n + 1, z)?.pop().expect("n + 1 entries"))
    }

    /// The `(k, f)` with `g = f · c(k, z)`.
    pub fn locate(&self, g: &Word, z: &ZPoint) -> Result<(usize, Word)> {
        let known = {
            let fibers = self.fibers.read().expect("fiber cache poisoned");
            match fibers.get(z) {
                Some(fiber) if matches!(self.membership, Membership::Folded { .. }) => self.classify(fiber, g, z)?,
                _ => None,
            }
        };
        let k = match known {
            Some(k) => k,
            None => {
                let rank = self.group.rank(g);
                self.with_fiber(z, |fiber| {
                    // The orbit minimum precedes g, so scanning through g suffices.
                    self.extend(fiber, z, rank, |_| false)?;
                    self.classify(fiber, g, z)?.ok_or_else(|| Error::InsufficientDepth {
                        depth: self.depth,
                        element: format!("{g:?}"),
                    })
                })?
            }
        };
        let c = self.c(k, z)?;
        let f = self.solve_orbit(g, &c, z)?.ok_or_else(|| Error::Undecidable { radius: 0 })?;
        Ok((k, f))
    }

    /// `δ(g, z)(n) = k  ⟺  g · c(n, z) ∈ F₂ · c(k, g · z)`.
    pub fn delta(&self, g: &Word, n: usize, z: &ZPoint) -> Result<usize> {
        Ok(self.delta_gamma(g, n, z)?.0)
    }

    /// `γ(g, n, z) = u  ⟺  g · c(n, z) = u⁻¹ · c(δ(g, z)(n), g · z)`.
    pub fn gamma(&self, g: &Word, n: usize, z: &ZPoint) -> Result<Word> {
        Ok(self.delta_gamma(g, n, z)?.1)
    }

    pub fn delta_gamma(&self, g: &Word, n: usize, z: &ZPoint) -> Result<(usize, Word)> {
        let moved = self.mul(g, &self.c(n, z)?);
        let (k, f) = self.locate(&moved, &self.act_z(g, z))?;
        Ok((k, f.inv()))
    }

    /// `ψ_z(f, n)`, the `G` coordinate of `f⁻¹ · c(n, z)`.
    pub fn psi(&self, f: &Word, n: usize, z: &ZPoint) -> Result<Word> {
        Ok(self.f_action(&f.inv(), &self.c(n, z)?, z))
    }

    /// `ψ_z⁻¹(g)`.
    pub fn psi_inverse(&self, g: &Word, z: &ZPoint) -> Result<(Word, usize)> {
        let (n, v) = self.locate(g, z)?;
        Ok((v.inv(), n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::ball;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn singleton() -> Coinduction {
        Coinduction::new(&CoinductionConfig::singleton()).unwrap()
    }

    #[test]
    fn transversal_starts_with_identity_a_b() {
        let c = singleton();
        let z = ZPoint::Singleton;
        assert_eq!(c.transversal(3, &z).unwrap(), vec![Word::identity(), w("a"), w("b")]);
        let o = Coinduction::new(&CoinductionConfig::orbit()).unwrap();
        assert!(o.c(0, &o.base_point()).unwrap().is_identity());
    }

    #[test]
    fn known_values_on_singleton() {
        let c = singleton();
        let z = ZPoint::Singleton;
        assert_eq!(c.f_action(&Word::identity(), &w("ab"), &z), w("ab"));
        assert_eq!(c.f_action(&w("a"), &Word::identity(), &z), w("AA"));
        assert_eq!(c.delta(&w("a"), 0, &z).unwrap(), 1);
        assert_eq!(c.delta(&w("a"), 1, &z).unwrap(), 0);
        assert_eq!(c.gamma(&w("a"), 1, &z).unwrap(), w("a"));
        assert_eq!(c.gamma(&w("a"), 0, &z).unwrap(), Word::identity());
        assert_eq!(c.psi(&w("a"), 0, &z).unwrap(), w("aa"));
        for n in 0..5 {
            assert_eq!(c.delta(&Word::identity(), n, &z).unwrap(), n);
            assert!(c.gamma(&Word::identity(), n, &z).unwrap().is_identity());
            assert_eq!(c.psi(&Word::identity(), n, &z).unwrap(), c.c(n, &z).unwrap());
        }
    }

    #[test]
    fn alpha_is_a_cocycle_on_the_orbit() {
        let c = Coinduction::new(&CoinductionConfig::orbit()).unwrap();
        let z = c.base_point();
        for f1 in ball(2) {
            let z1 = c.f_act_z(&f1, &z);
            assert_eq!(c.act_z(&c.alpha(&f1, &z), &z), z1);
            for f2 in ball(2) {
                let lhs = c.alpha(&f2.mul(&f1), &z);
                let rhs = c.mul(&c.alpha(&f2, &z1), &c.alpha(&f1, &z));
                assert_eq!(lhs, rhs);
            }
            assert_eq!(c.alpha_inverse(&z, &c.alpha(&f1, &z)).unwrap(), Some(f1.clone()));
        }
        assert_ne!(c.alpha(&w("a"), &z), c.alpha(&w("a"), &c.act_z(&w("b"), &z)));
    }

    #[test]
    fn f_action_is_a_free_action() {
        for cfg in [CoinductionConfig::singleton(), CoinductionConfig::orbit()] {
            let c = Coinduction::new(&cfg).unwrap();
            let z = c.base_point();
            for g in ball(2) {
                for f1 in ball(2) {
                    for f2 in ball(1) {
                        let lhs = c.f_action(&f2, &c.f_action(&f1, &g, &z), &z);
                        assert_eq!(lhs, c.f_action(&f2.mul(&f1), &g, &z));
                    }
                    if !f1.is_identity() {
                        assert_ne!(c.f_action(&f1, &g, &z), g);
                    }
                }
            }
        }
    }

    #[test]
    fn psi_round_trip() {
        for cfg in [CoinductionConfig::singleton(), CoinductionConfig::orbit()] {
            let c = Coinduction::new(&cfg).unwrap();
            let z = c.base_point();
            for f in ball(2) {
                for n in 0..6 {
                    let g = c.psi(&f, n, &z).unwrap();
                    assert_eq!(c.psi_inverse(&g, &z).unwrap(), (f.clone(), n));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_iota() {
        let mut cfg = CoinductionConfig::singleton();
        cfg.iota = [w("a"), w("b")];
        assert!(matches!(Coinduction::new(&cfg), Err(Error::Config(_))));
        cfg.iota = [w("a"), w("aa")];
        assert!(matches!(Coinduction::new(&cfg), Err(Error::NotInjective(_))));
        cfg.iota = [w("aa"), w("bb")];
        cfg.theta = [w("a"), w("a")];
        assert!(Coinduction::new(&cfg).is_err());
    }

    #[test]
    fn shallow_transversal_reports_depth() {
        let mut cfg = CoinductionConfig::singleton();
        cfg.transversal_depth = 3;
        let c = Coinduction::new(&cfg).unwrap();
        assert!(matches!(c.c(5, &ZPoint::Singleton), Err(Error::InsufficientDepth { .. })));
        assert!(matches!(
            c.locate(&w("abab"), &ZPoint::Singleton),
            Err(Error::InsufficientDepth { .. })
        ));
    }

    /// F₂ seen only through the oracle interface, forcing bounded search.
    struct Opaque;

    impl GroupOracle for Opaque {
        type Elem = Word;
        fn identity(&self) -> Word {
            Word::identity()
        }
        fn mul(&self, x: &Word, y: &Word) -> Word {
            x.mul(y)
        }
        fn inv(&self, x: &Word) -> Word {
            x.inv()
        }
        fn enumerate(&self, n: u64) -> Word {
            Word::unrank(n)
        }
        fn rank(&self, x: &Word) -> u64 {
            x.rank()
        }
        fn search_radius(&self) -> usize {
            8
        }
    }

    #[test]
    fn search_route_agrees_with_folded_route() {
        let folded = singleton();
        let search = Coinduction::with_group(
            Opaque,
            Homomorphism::identity(),
            Homomorphism::squares(),
            ZSpec::Singleton,
            OrbitBijection::LengthLex,
            64,
        )
        .unwrap();
        let z = ZPoint::Singleton;
        assert_eq!(search.transversal(12, &z).unwrap(), folded.transversal(12, &z).unwrap());
        for g in ball(2) {
            for n in 0..4 {
                assert_eq!(search.delta_gamma(&g, n, &z).unwrap(), folded.delta_gamma(&g, n, &z).unwrap());
            }
        }
    }
}

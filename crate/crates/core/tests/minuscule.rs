use hibi_core::grid::{canonical_points, validate_grid, GridPoint, JoinIrreducibleGrid};
use hibi_core::{DistLattice, Error, HibiData, MinusculeSpec, Poset};

fn spec(s: &str) -> MinusculeSpec {
    s.parse().unwrap()
}

fn build(s: &str) -> DistLattice {
    spec(s).build().unwrap()
}

/// The join irreducibles of `l` as a lattice.
fn j_lattice(l: &DistLattice) -> DistLattice {
    DistLattice::from_poset(l.poset().induced(&l.nonzero_join_irreducibles())).unwrap()
}

#[test]
fn spin_coincidences() {
    for n in 2..=5 {
        let b = build(&format!("B{n}:{n}"));
        if n + 1 >= 4 {
            let d1 = build(&format!("D{}:{}", n + 1, n + 1));
            let d2 = build(&format!("D{}:{}", n + 1, n));
            assert!(b.poset().is_isomorphic(d1.poset()), "B{n}");
            assert!(b.poset().is_isomorphic(d2.poset()), "B{n}");
        }
        assert_eq!(b.len(), 1 << n);
    }
}

#[test]
fn exceptional_coincidences() {
    let e6 = build("E6:1");
    let e7 = build("E7:7");
    assert!(j_lattice(&e6).poset().is_isomorphic(build("D5:5").poset()));
    assert!(j_lattice(&e7).poset().is_isomorphic(e6.poset()));
    assert!(e6.poset().is_isomorphic(build("E6:6").poset()));
}

#[test]
fn spin_grid_is_the_staircase() {
    let g = spec("D5:5").grid().unwrap();
    assert_eq!(g.len(), 10);
    assert!(g.points().iter().all(|p| p.x < p.y && p.y <= 5));
    let block = spec("A3:2").grid().unwrap();
    assert_eq!(block.points(), &[(1, 1), (1, 2), (2, 1), (2, 2)].map(|(x, y)| GridPoint::new(x, y)));
}

#[test]
fn literal_tables_match_computed_embeddings() {
    for (s, n) in [("E6:1", 16), ("E7:7", 27)] {
        let l = build(s);
        let jg = spec(s).join_irreducible_grid(&l).unwrap();
        assert_eq!(jg.points().len(), n);
        let computed = JoinIrreducibleGrid::new(&l).unwrap();
        assert_eq!(
            canonical_points(computed.points().iter().copied()).unwrap(),
            canonical_points(spec(s).grid_coords()).unwrap()
        );
    }
    let e7 = spec("E7:7").grid().unwrap();
    assert_eq!(e7.points().first(), Some(&GridPoint::new(1, 1)));
    assert_eq!(e7.points().last(), Some(&GridPoint::new(9, 9)));
}

#[test]
fn grid_property_holds() {
    for s in MinusculeSpec::all_up_to(7) {
        assert!(s.verify_grid_property(), "{s}");
        assert!(validate_grid(s.grid_coords()).is_ok());
    }
}

#[test]
fn every_small_minuscule_lattice_is_pure() {
    for s in MinusculeSpec::all_up_to(7) {
        let l = s.build().unwrap();
        let data = HibiData::with_grid(&l, s.join_irreducible_grid(&l).unwrap()).unwrap();
        let locus = data.singular_locus(&l).unwrap();
        assert!(locus.pure_codim3(), "{s}");
        assert_eq!(locus.dim, l.max_chain_cardinality(), "{s}");
        // smooth exactly for the chains
        assert_eq!(locus.is_smooth(), l.len() == l.max_chain_cardinality(), "{s}");
        l.birkhoff_roundtrip().unwrap();
    }
}

#[test]
fn degenerate_type_a_is_a_chain() {
    // A_r(ω_1) is the (r+1)-chain
    for r in 1..=6 {
        let l = build(&format!("A{r}:1"));
        assert!(l.poset().is_isomorphic(&Poset::chain(r + 1)));
    }
}

#[test]
fn invalid_specs() {
    for s in ["D3:3", "B1:1", "E6:3", "C0:1", "G2:1", "A5"] {
        assert!(matches!(s.parse::<MinusculeSpec>(), Err(Error::InvalidSpec(..))), "{s}");
    }
}

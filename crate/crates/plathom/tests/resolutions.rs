use plathom::chain::Resolution;
use plathom::diagram::PlatWord;
use plathom::homology::{edge_identity_report, module_report, resolution_homology, u_action_identities};
use plathom::khovanov::kh_homology;

fn bits(u: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| u >> i & 1 == 1).collect()
}

#[test]
fn trefoil_resolutions_are_free_of_rank_one() {
    let w = PlatWord::parse("n=2; word=[+2,+2,+2]").unwrap();
    for u in 0..8 {
        let r = Resolution::new(w.resolve(&bits(u, 3)).unwrap());
        let vh = resolution_homology(&r, 4).unwrap();
        let m = module_report(&r, &vh);
        assert!(m.passed(), "vertex {u}: {m:?}");
        let ua = u_action_identities(&r, &vh);
        assert!(ua.passed(), "vertex {u}: {:?}", ua.failures);
    }
}

#[test]
fn smoothing_circles_match_the_khovanov_cube() {
    for s in ["n=1; word=[+1]", "n=1; word=[-1]", "n=2; word=[+2,+2,+2]", "n=2; word=[-2,+1,-3]", "n=2; word=[+2,-2,+2]"] {
        let w = PlatWord::parse(s).unwrap();
        let kh = kh_homology(&w);
        for u in 0..1usize << w.len() {
            let g = w.resolve(&bits(u, w.len())).unwrap();
            assert_eq!(g.smooth().circle_count, kh.circles[u], "{s} at vertex {u}");
        }
    }
}

#[test]
fn edge_identities_on_small_words() {
    for s in ["n=1; word=[+1]", "n=1; word=[-1]", "n=2; word=[+2,-2]", "n=2; word=[+1,+3]"] {
        let r = edge_identity_report(&PlatWord::parse(s).unwrap(), 4).unwrap();
        assert!(r.checks > 0);
        assert!(r.passed(), "{s}: {:?}", r.failures);
    }
}

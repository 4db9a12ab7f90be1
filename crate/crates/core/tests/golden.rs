use quiver_rpp::arquiver::ArQuiver;
use quiver_rpp::bijection::RppBijection;
use quiver_rpp::quiver::RepClass;
use quiver_rpp::typea::{hg_extract, hg_insert, pak_map, GridLayout, RectShape};

fn setup(q: &str, m: usize) -> (RppBijection, GridLayout) {
    let ar = ArQuiver::knit(&q.parse().unwrap()).unwrap();
    let bij = RppBijection::new(&ar, m).unwrap();
    let n = ar.quiver().num_vertices();
    let layout = GridLayout::new(bij.poset(), n).unwrap();
    (bij, layout)
}

const EQUIORIENTED_REP: &str = "11100:4,01100:3,00110:1,01110:1,00111:1,11111:2";
const MIXED_REP: &str = "11100:4,01100:3,00110:1,01110:1,11111:1,00111:2";
const ALTERNATING_REP: &str = "01100:1,01110:1,11111:2,00110:2";

#[test]
fn equioriented_a5() {
    let (bij, layout) = setup("A5:1<2<3<4<5", 2);
    let rep: RepClass = EQUIORIENTED_REP.parse().unwrap();
    let grid = layout.to_grid(&bij.to_rpp(&rep, 0).unwrap());
    assert_eq!(grid.to_string(), "0 2 3/2 2 3/6 8 10");
    assert_eq!(hg_extract(&grid).unwrap(), rep);
    assert_eq!(hg_insert(&rep, grid.shape()).unwrap(), grid);
    let back = layout
        .to_rpp(&grid, quiver_rpp::poset::Bound::Unbounded)
        .unwrap();
    assert_eq!(bij.from_rpp(&back, 3).unwrap(), rep);
}

#[test]
fn mixed_a5() {
    let (bij, layout) = setup("A5:1>2>3<4<5", 2);
    let rep: RepClass = MIXED_REP.parse().unwrap();
    let grid = layout.to_grid(&bij.to_rpp(&rep, 0).unwrap());
    assert_eq!(grid.to_string(), "1 1 3/1 3 4/5 8 8");
    assert_eq!(pak_map(&rep, RectShape::new(3, 3).unwrap()).unwrap(), grid);
}

#[test]
fn alternating_a5() {
    let (bij, layout) = setup("A5:1<2>3<4>5", 2);
    let rep: RepClass = ALTERNATING_REP.parse().unwrap();
    let rpp = bij.to_rpp(&rep, 0).unwrap();
    let expected = [
        ("00110", 2),
        ("00111", 3),
        ("11110", 2),
        ("11111", 2),
        ("01110", 1),
        ("01111", 1),
        ("00100", 3),
        ("11100", 3),
        ("01100", 2),
    ];
    let p = &bij.poset().poset;
    for (name, v) in expected {
        assert_eq!(rpp.values[p.index_of(name).unwrap()], v.into(), "{name}");
    }
    let top = p.maximal_elements();
    assert_eq!(top.len(), 1);
    assert_eq!(p.name(top[0]), "01110");
    let grid = layout.to_grid(&rpp);
    assert_eq!(grid.get(0, 0), &1.into());
    let shape = RectShape::new(3, 3).unwrap();
    let hg = hg_insert(&rep, shape).unwrap();
    let pak = pak_map(&rep, shape).unwrap();
    assert_eq!(hg.get(0, 0), &0.into());
    assert_eq!(pak.get(0, 0), &0.into());
    assert_eq!(pak.to_string(), "0 0 2/0 1 5/2 4 5");
}

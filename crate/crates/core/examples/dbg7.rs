use lombardi_core::geom::{ccw_gap, deg, CircleArc, bisector_arc};
use lombardi_core::notation::knot;
use lombardi_core::graph::contract_multilens;

fn main() {
    let g = knot("5_2").unwrap().graph;
    let chain = g.find_multilens().into_iter().filter(|c| c.len() >= 3).min_by_key(|c| c.clone()).unwrap();
    let (contracted, _) = contract_multilens(&g, &chain).unwrap();
    let sub = lombardi_core::eps::draw_eps(&contracted, 1.0).unwrap();
    let lens = contracted.find_lenses().into_iter().min_by_key(|l| (l.u, l.v)).unwrap();
    let d = &sub.drawing;
    let (d1, d2) = lens.darts_at_u;
    let e1 = d.chain_from(d1)[0];
    let e2 = d.chain_from(d2)[0];
    let u = d.positions[lens.u];
    let v = d.positions[lens.v];
    println!("lens span {:.3e}, e1 turn {:.4}, e2 turn {:.4}", u.dist(v), e1.turn, e2.turn);
    // check e1, e2 endpoints exactness
    println!("e1 p-u {:.2e}  e1 q-v {:.2e}", e1.p.dist(u), e1.q.dist(v));
    let b = bisector_arc(&e1, &e2).unwrap();
    // angles of b to e1/e2 at u and at v
    let bu = ccw_gap(e1.tangent_at_p().angle(), b.tangent_at_p().angle());
    let bu2 = ccw_gap(b.tangent_at_p().angle(), e2.tangent_at_p().angle());
    println!("bisector at u: {:.12} vs {:.12} deg", deg(bu), deg(bu2));
    let bv = ccw_gap((-e1.tangent_at_q()).angle(), (-b.tangent_at_q()).angle());
    let bv2 = ccw_gap((-b.tangent_at_q()).angle(), (-e2.tangent_at_q()).angle());
    println!("bisector at v: {:.12} vs {:.12} deg (hmm orientation)", deg(bv), deg(bv2));
    for t in [0.3, 0.5, 0.7] {
        let p = b.point_at(t);
        let a1 = CircleArc::from_tangent(u, p, e1.tangent_at_p()).unwrap();
        let a2 = CircleArc::from_tangent(u, p, e2.tangent_at_p()).unwrap();
        let a3 = CircleArc::from_tangent(v, p, -e1.tangent_at_q()).unwrap();
        let a4 = CircleArc::from_tangent(v, p, -e2.tangent_at_q()).unwrap();
        let dirs = [(-a1.tangent_at_q()).angle(), (-a2.tangent_at_q()).angle(), (-a3.tangent_at_q()).angle(), (-a4.tangent_at_q()).angle()];
        let d14 = deg(lombardi_core::geom::wrap_angle(dirs[3] - dirs[0] - std::f64::consts::PI).abs());
        let d23 = deg(lombardi_core::geom::wrap_angle(dirs[2] - dirs[1] - std::f64::consts::PI).abs());
        println!("t={t}: opp(a1,a4) dev {d14:.3e} deg, opp(a2,a3) dev {d23:.3e} deg");
    }
}

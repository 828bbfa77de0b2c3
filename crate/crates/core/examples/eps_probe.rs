use lombardi_core::eps::draw_eps;
use lombardi_core::notation::KNOT_TABLE;
use lombardi_core::verify::{verify, VerifyMode};

fn main() {
    let mut fails = 0;
    for (name, code) in KNOT_TABLE {
        let g = lombardi_core::notation::parse_dt(code).unwrap().graph;
        for eps in [5.0, 1.0, 0.1] {
            match draw_eps(&g, eps) {
                Ok(d) => {
                    let r = verify(&d.drawing, VerifyMode::Eps(eps)).unwrap();
                    if !r.pass() {
                        fails += 1;
                        println!("{name} eps {eps}: VERIFY FAIL");
                        for l in r.lines() { if l.starts_with("FAIL") { println!("    {l}"); } }
                    }
                }
                Err(e) => {
                    fails += 1;
                    println!("{name} eps {eps}: ERROR {e}");
                }
            }
        }
    }
    println!("total failures: {fails} / {}", KNOT_TABLE.len() * 3);
}

use lombardi_core::drawing::EpsDrawing;
use lombardi_core::eps::lens_extension_eps;
fn main() {
    let base = lombardi_core::drawing::triple_base_drawing(3.0);
    let gamma = EpsDrawing { drawing: base, eps_deg: 3.0, regular: true };
    let split = gamma.drawing.graph.darts_of(1)[1];
    match lens_extension_eps(&gamma, 1, split, 1.0) {
        Ok(out) => {
            let r = lombardi_core::verify::verify(&out.drawing, lombardi_core::verify::VerifyMode::Eps(4.0)).unwrap();
            println!("pass {} lines:", r.pass());
            for l in r.lines() { if l.starts_with("FAIL") { println!("{l}"); } }
        }
        Err(e) => println!("err {e}"),
    }
}

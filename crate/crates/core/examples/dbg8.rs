use lombardi_core::notation::knot;
fn main() {
    std::env::set_var("EXT_DEBUG", "1");
    let g = knot("8_15").unwrap().graph;
    match lombardi_core::eps::draw_eps(&g, 5.0) {
        Ok(_) => println!("ok"),
        Err(e) => println!("err {e}"),
    }
}

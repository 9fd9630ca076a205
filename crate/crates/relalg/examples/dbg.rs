use relalg::representation::*;
fn main() {
    let (ra, model) = order_model_56_65();
    let rep = grid_representation(ra, &model, 30);
    let c = ra.atom_by_name("c").unwrap();
    println!("atom_of(4,7) = {:?} (want c={:?})", rep.atom_of(4, 7), c);
    println!("atom_of(7,3) = {:?}", rep.atom_of(7, 3));
    println!("atom_of(4,3) = {:?}", rep.atom_of(4, 3));
    // manual composition witness scan for (4,3) via c;c
    for k in 0..30 {
        if rep.holds(c, 4, k) && rep.holds(c, k, 3) {
            println!("witness k={k}");
        }
    }
}

use toda_core::scalar::FieldElem;

fn main() {
    let w = FieldElem::omega();
    let i = FieldElem::imag_unit();
    let r2 = FieldElem::sqrt2();
    println!("omega^3 = {}", w.pow(3));
    println!("i^2 = {}", &i * &i);
    println!("1 + omega + omega^2 = {}", &(&FieldElem::one() + &w) + &w.pow(2));
    let z = &r2 + &i;
    println!("z = {z}, re {}, im {}", z.re(), z.im());
    println!("1/z = {}", z.inv().unwrap());
    println!("z * (1/z) = {}", &z * &z.inv().unwrap());
}

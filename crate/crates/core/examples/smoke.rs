use rsg_core::ideal::*;
use rsg_core::poly::*;
use rsg_core::scalar::FieldDescriptor;
use std::time::Instant;

fn main() {
    // UFD quadric: x5 in rad(x1, x3) in S/(x1*x2 + x3*x4 + x5^2)
    let r = RingContext::standard(
        &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        FieldDescriptor::Rationals,
    );
    let f = parse_polynomial("x1*x2 + x3*x4 + x5^2", &r).unwrap();
    let u = GradedVectorSpace::new(&r, vec![f]).unwrap();
    let q = QuotientContext::new(u).unwrap();
    let x5 = parse_polynomial("x5", &r).unwrap();
    let x1 = parse_polynomial("x1", &r).unwrap();
    let x3 = parse_polynomial("x3", &r).unwrap();
    let t0 = Instant::now();
    let rm = radical_member(&x5, &[x1.clone(), x3.clone()], Some(&q)).unwrap();
    println!("x5 in rad(x1,x3) in R: {} ({:?})", rm, t0.elapsed());
    assert!(rm);
    // and x5 not in the linear span of x1, x3
    let span = span_dimension(&[x1.clone(), x3.clone(), x5.clone()]).unwrap();
    println!("span(x1,x3,x5) = {}", span);
    assert_eq!(span, 3);

    // recursive example witness check: y in rad(F5, F6) in K[x,y,z]
    let r3 = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let f3 = parse_polynomial("x*z + y^2", &r3).unwrap();
    let f4 = parse_polynomial("x*(x*z + y^2) + y^3", &r3).unwrap();
    let f5 = f3.mul(&f4).add(&parse_polynomial("y^5", &r3).unwrap());
    let f6 = f3
        .mul(&f4)
        .mul(&f5)
        .add(&parse_polynomial("y^10", &r3).unwrap());
    println!("deg F5 = {:?}, deg F6 = {:?}", f5.degree(), f6.degree());
    let y = parse_polynomial("y", &r3).unwrap();
    let t1 = Instant::now();
    let rm2 = radical_member(&y, &[f5.clone(), f6.clone()], None).unwrap();
    println!("y in rad(F5, F6): {} ({:?})", rm2, t1.elapsed());
    assert!(rm2);
    let t2 = Instant::now();
    let rm3 = radical_member(&y, &[parse_polynomial("x", &r3).unwrap(), f6.clone()], None).unwrap();
    println!("y in rad(x, F6): {} ({:?})", rm3, t2.elapsed());
    assert!(rm3);
}

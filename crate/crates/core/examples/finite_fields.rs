//! Arithmetic tables for GF(2^3) and GF(9).

use expander_lcc::field::FieldSpec;

fn main() -> expander_lcc::error::Result<()> {
    for (p, ell) in [(2, 3), (3, 2)] {
        let f = FieldSpec::new(p, ell)?;
        println!("{} with modulus {:?}", f.name(), f.modulus());
        let q = f.order();
        print!("  *  |");
        for b in 0..q {
            print!("{b:3}");
        }
        println!();
        for a in 0..q {
            print!("{a:4} |");
            for b in 0..q {
                print!("{:3}", f.mul(a, b));
            }
            println!();
        }
        for a in 1..q {
            let inv = f.inv(a).expect("nonzero element");
            assert_eq!(f.mul(a, inv), 1);
        }
        println!("  every nonzero element has an inverse\n");
    }
    Ok(())
}

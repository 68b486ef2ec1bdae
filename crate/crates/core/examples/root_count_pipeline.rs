//! The full pipeline: BKK bound, Khovanskii bound and exact generic count.

use semimixed::counting::{count_report, coupled_family, multifreq_family, oscillator_family};
use semimixed::{MonomialOrder, Result};

fn main() -> Result<()> {
    let ord = MonomialOrder::deglex();
    for n in 2..=4 {
        let report = count_report(
            &oscillator_family(n)?,
            &ord,
            0,
            None,
            &format!("single resonator n={n}"),
        )?;
        println!("{report}\n");
    }

    let (fam, partition) = coupled_family(2, 2)?;
    let report = count_report(&fam, &ord, 0, Some(&partition), "two coupled resonators")?;
    println!("{report}\n");

    let fam = multifreq_family(2)?.with_sizes(vec![1, 1, 1, 1])?;
    let report = count_report(&fam, &ord, 0, None, "two harmonics")?;
    println!("{report}");
    Ok(())
}

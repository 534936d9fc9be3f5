//! 2-sections, labelled 2-sections and the conformality test.

use hyperprod::sections::{inverse_l2, is_conformal, l2_section, two_section};
use hyperprod::Hypergraph;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = Hypergraph::from_lists(&[&["a", "b", "c"], &["c", "d"]])?;
    println!("2-section:\n{}", two_section(&h).to_text());
    let section = l2_section(&h);
    println!("labelled 2-section:\n{}", section.to_text());
    assert_eq!(inverse_l2(&section)?, h);

    for lists in [&[&["a", "b", "c"][..], &["c", "d"]][..], &[&["a", "b"], &["b", "c"], &["a", "c"]]] {
        let h = Hypergraph::from_lists(lists)?;
        let report = is_conformal(&h, 100_000)?;
        println!("{} -> {}", h.to_text().trim().replace('\n', ", "), report.to_json_value());
    }
    Ok(())
}

use kdvw::config::{parse_text, ExperimentConfig};
use kdvw::table::{Cell, Table};
use proptest::prelude::*;

proptest! {
    #[test]
    fn tables_round_trip(rows in prop::collection::vec((any::<f64>().prop_filter("finite", |v| v.is_finite()), "[a-z_]{1,8}"), 0..40)) {
        let mut t = Table::new(&["value", "label"]);
        for (v, s) in &rows {
            t.push(vec![Cell::Num(*v), Cell::Text(s.clone())]);
        }
        let back = Table::parse(&t.render()).unwrap();
        prop_assert_eq!(back.rows.len(), rows.len());
        for (a, b) in t.column("value").unwrap().iter().zip(back.column("value").unwrap()) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn echoed_config_parses_back(eps in prop::collection::vec(0.004f64..1.0, 1..5), t in 0.05f64..1.0, l in prop::option::of(1.0f64..8.0)) {
        let text = format!("epsilon = {}\ntimes = {t}\n{}", eps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", "), l.map(|l| format!("L = {l}\n")).unwrap_or_default());
        let c = ExperimentConfig::from_raw(&parse_text(&text).unwrap()).unwrap();
        let echo: String = c.echo().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let d = ExperimentConfig::from_raw(&parse_text(&echo).unwrap()).unwrap();
        prop_assert_eq!(c, d);
    }
}

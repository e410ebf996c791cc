use gfh::legfront::{augmentations, chekanov_dga, lch, Event, FrontDiagram};

fn main() {
    let mut rng: u64 = 0x9E3779B9;
    let mut next = move || { rng ^= rng << 13; rng ^= rng >> 7; rng ^= rng << 17; rng };
    let mut checked = 0u64;
    let mut violations = 0u64;
    let mut max_deg_gen_seen = 0i64;
    let mut augmented_with_deg3_gens = 0u64;
    for _ in 0..400_000u64 {
        let l2 = (next() % 3) as usize;
        let l3 = (next() % 5) as usize;
        let len = 3 + (next() % 10) as usize;
        let mut events = vec![Event::lcusp(0), Event::lcusp(l2), Event::lcusp(l3)];
        for _ in 0..len { events.push(Event::cross((next() % 5) as usize)); }
        events.push(Event::rcusp((next() % 5) as usize));
        events.push(Event::rcusp((next() % 3) as usize));
        events.push(Event::rcusp(0));
        let front = FrontDiagram::new(events);
        if front.classical_invariants().is_err() { continue; }
        let Ok(dga) = chekanov_dga(&front) else { continue };
        let dmax = dga.generators.iter().map(|g| g.degree.abs()).max().unwrap_or(0);
        max_deg_gen_seen = max_deg_gen_seen.max(dmax);
        let Ok(augs) = augmentations(&dga) else { continue };
        if augs.is_empty() { continue; }
        if dmax >= 3 { augmented_with_deg3_gens += 1; }
        for a in &augs {
            let l = lch(&dga, a).unwrap();
            checked += 1;
            // Sabloff duality: h_k = h_{-k} for k >= 2, h_1 = h_{-1} + 1.
            let ok1 = l.get(1).free == l.get(-1).free + 1;
            let mut okk = true;
            for k in 2..=6i64 {
                if l.get(k).free != l.get(-k).free { okk = false; }
            }
            if !(ok1 && okk) {
                violations += 1;
                if violations <= 5 {
                    println!("DUALITY VIOLATION: {} (events {:?})", l, front.events.len());
                }
            }
        }
    }
    println!("lch checked: {checked}, duality violations: {violations}");
    println!("max |degree| among generators seen: {max_deg_gen_seen}");
    println!("augmented fronts having |deg|>=3 generators: {augmented_with_deg3_gens}");
}

use super::{Poset, PosetError};

/// Returns the first pair `x <= y` with `f(x) </= f(y)`, if any.
pub fn is_monotone(source: &Poset, target: &Poset, map: &[usize]) -> Result<(), (usize, usize)> {
    for &(x, y) in source.covers() {
        if !target.le(map[x], map[y]) {
            return Err((x, y));
        }
    }
    Ok(())
}

/// Enumerates every monotone map `source -> target`, in lexicographic order
/// of the image vector.
///
/// `budget` bounds the number of search nodes visited.
pub fn monotone_maps(
    source: &Poset,
    target: &Poset,
    budget: usize,
) -> Result<Vec<Vec<usize>>, PosetError> {
    let order = source.linear_extension();
    let mut position = vec![0usize; source.len()];
    for (k, &x) in order.iter().enumerate() {
        position[x] = k;
    }
    // Constraints only against elements placed earlier in the extension.
    let earlier: Vec<Vec<usize>> = order
        .iter()
        .map(|&x| {
            (0..source.len())
                .filter(|&y| position[y] < position[x] && source.le(y, x))
                .collect()
        })
        .collect();

    let mut out = Vec::new();
    let mut map = vec![usize::MAX; source.len()];
    let mut nodes = 0usize;

    fn go(
        k: usize,
        order: &[usize],
        earlier: &[Vec<usize>],
        target: &Poset,
        map: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        nodes: &mut usize,
        budget: usize,
    ) -> Result<(), PosetError> {
        *nodes += 1;
        if *nodes > budget {
            return Err(PosetError::BudgetExceeded(budget));
        }
        if k == order.len() {
            out.push(map.clone());
            return Ok(());
        }
        let x = order[k];
        for v in 0..target.len() {
            if earlier[k].iter().all(|&y| target.le(map[y], v)) {
                map[x] = v;
                go(k + 1, order, earlier, target, map, out, nodes, budget)?;
            }
        }
        map[x] = usize::MAX;
        Ok(())
    }

    go(
        0, &order, &earlier, target, &mut map, &mut out, &mut nodes, budget,
    )?;
    out.sort();
    Ok(out)
}

use super::MatrixPath;

/// Column names of a flattened path table: `path_id, t, re_ij, im_ij, …`.
pub fn path_header(n: usize) -> Vec<String> {
    let mut h = vec!["path_id".to_string(), "t".to_string()];
    for i in 0..n {
        for j in 0..n {
            h.push(format!("re_{i}{j}"));
            h.push(format!("im_{i}{j}"));
        }
    }
    h
}

/// Rows matching [`path_header`], one per grid point.
pub fn path_rows(path: &MatrixPath, path_id: u64) -> Vec<(u64, Vec<f64>)> {
    path.grid
        .times()
        .zip(&path.states)
        .map(|(t, g)| {
            let mut row = Vec::with_capacity(1 + 2 * g.as_slice().len());
            row.push(t);
            for z in g.as_slice() {
                row.push(z.re);
                row.push(z.im);
            }
            (path_id, row)
        })
        .collect()
}

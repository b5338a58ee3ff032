//! Brute-force references shared by the integration tests. Nothing here
//! goes through the compiled state-space representation.

#![allow(dead_code)]

use maxrep::ProcessModel;

/// Stationary law of `t` by Gaussian elimination on `pi (T - I) = 0`,
/// `sum pi = 1`.
pub fn stationary(t: &[Vec<f64>]) -> Vec<f64> {
    let s = t.len();
    // rows: equations, last row replaced by normalisation
    let mut a = vec![vec![0.0; s + 1]; s];
    for (j, row) in a.iter_mut().enumerate() {
        for i in 0..s {
            row[i] = t[i][j] - if i == j { 1.0 } else { 0.0 };
        }
    }
    a[s - 1] = vec![1.0; s + 1];
    for col in 0..s {
        let pivot = (col..s)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        for r in 0..s {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=s {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    (0..s).map(|i| a[i][s] / a[i][i]).collect()
}

pub fn all_words(alphabet: usize, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..alphabet as u32).map(move |y| {
                    let mut v = w.clone();
                    v.push(y);
                    v
                })
            })
            .collect();
    }
    out
}

/// Hidden chain parameters read straight from the model description.
pub struct Raw {
    pub pi: Vec<f64>,
    pub t: Vec<Vec<f64>>,
    pub e: Vec<Vec<f64>>,
}

pub fn raw(model: &ProcessModel) -> Option<Raw> {
    match model {
        ProcessModel::Iid { probs } => Some(Raw {
            pi: vec![1.0],
            t: vec![vec![1.0]],
            e: vec![probs.clone()],
        }),
        ProcessModel::Markov { transition, .. } => {
            let s = transition.len();
            Some(Raw {
                pi: stationary(transition),
                t: transition.clone(),
                e: (0..s).map(|i| (0..s).map(|j| f64::from(u8::from(i == j))).collect()).collect(),
            })
        }
        ProcessModel::HiddenMarkov { transition, emission, .. } => Some(Raw {
            pi: stationary(transition),
            t: transition.clone(),
            e: emission.clone(),
        }),
        _ => None,
    }
}

/// Sum over every hidden path of `pi(s_1) E(s_1, w_1) T(s_1, s_2) ...`,
/// starting from the state law `start`.
pub fn path_sum(r: &Raw, start: &[f64], w: &[u32]) -> f64 {
    let s = r.pi.len();
    let mut total = 0.0;
    let paths = s.pow(w.len() as u32);
    for code in 0..paths {
        let mut c = code;
        let mut p = 1.0;
        let mut prev: Option<usize> = None;
        for &y in w {
            let state = c % s;
            c /= s;
            p *= match prev {
                None => start[state],
                Some(q) => r.t[q][state],
            } * r.e[state][y as usize];
            prev = Some(state);
        }
        total += p;
    }
    total
}

pub fn alphabet(model: &ProcessModel) -> usize {
    model.alphabet_size()
}

/// `P(X_1^n = w)` under the stationary law.
pub fn word_prob(model: &ProcessModel, w: &[u32]) -> f64 {
    match model {
        ProcessModel::UniformlyDithered { base, dither, .. } => {
            let a = dither.len() as u32;
            all_words(base.alphabet_size(), w.len())
                .into_iter()
                .map(|x| {
                    let noise: f64 = x
                        .iter()
                        .zip(w)
                        .map(|(&xi, &yi)| dither[((yi + a - xi) % a) as usize])
                        .product();
                    word_prob(base, &x) * noise
                })
                .sum()
        }
        ProcessModel::Iid { probs } => w.iter().map(|&y| probs[y as usize]).product(),
        ProcessModel::Markov { transition, .. } => {
            let pi = stationary(transition);
            w.windows(2)
                .map(|p| transition[p[0] as usize][p[1] as usize])
                .product::<f64>()
                * w.first().map_or(1.0, |&y| pi[y as usize])
        }
        ProcessModel::PeriodicRandomPhase { period, .. } => {
            let p = period.len();
            (0..p)
                .filter(|&phase| w.iter().enumerate().all(|(i, &y)| period[(phase + i) % p] == y))
                .count() as f64
                / p as f64
        }
        other => {
            let r = raw(other).expect("hidden chain model");
            let pi = r.pi.clone();
            path_sum(&r, &pi, w)
        }
    }
}

pub fn renyi(probs: &[f64], gamma: f64) -> f64 {
    let pos: Vec<f64> = probs.iter().copied().filter(|&p| p > 0.0).collect();
    if gamma == 0.0 {
        (pos.len() as f64).ln()
    } else if gamma == 1.0 {
        pos.iter().map(|p| -p * p.ln()).sum()
    } else if gamma.is_infinite() {
        -pos.iter().copied().fold(0.0, f64::max).ln()
    } else {
        pos.iter().map(|p| p.powf(gamma)).sum::<f64>().ln() / (1.0 - gamma)
    }
}

pub fn block_distribution(model: &ProcessModel, n: usize) -> Vec<f64> {
    all_words(alphabet(model), n).iter().map(|w| word_prob(model, w)).collect()
}

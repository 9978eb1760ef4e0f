use crate::error::{Error, Result};

/// Mean pairwise Euclidean distance of a population.
pub fn diversity(positions: &[Vec<f64>]) -> Result<f64> {
    let n = positions.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let d2: f64 = positions[i]
                .iter()
                .zip(&positions[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            total += d2.sqrt();
        }
    }
    Ok(total / (n * (n - 1) / 2) as f64)
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn centroid(points: &[&Vec<f64>], d: usize) -> Vec<f64> {
    let mut c = vec![0.0; d];
    for p in points {
        for k in 0..d {
            c[k] += p[k];
        }
    }
    c.iter_mut().for_each(|v| *v /= points.len() as f64);
    c
}

/// Result of splitting a population into two groups.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoClusters {
    pub centers: [Vec<f64>; 2],
    pub sizes: [usize; 2],
    /// Cluster index of each input point.
    pub labels: Vec<usize>,
}

impl TwoClusters {
    /// Distance between the two cluster means.
    pub fn gap(&self) -> f64 {
        dist2(&self.centers[0], &self.centers[1]).sqrt()
    }

    /// Fraction of points in the smaller cluster.
    pub fn minority_fraction(&self) -> f64 {
        self.sizes[0].min(self.sizes[1]) as f64 / (self.sizes[0] + self.sizes[1]) as f64
    }
}

/// Deterministic 2-means: seeded with the two mutually farthest points,
/// then Lloyd iterations until the labels stop changing.
pub fn two_clusters(positions: &[Vec<f64>]) -> Result<TwoClusters> {
    let n = positions.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let d = positions[0].len();
    let (mut a, mut b, mut far) = (0, 1, -1.0);
    for i in 0..n {
        for j in i + 1..n {
            let r = dist2(&positions[i], &positions[j]);
            if r > far {
                (a, b, far) = (i, j, r);
            }
        }
    }
    let mut centers = [positions[a].clone(), positions[b].clone()];
    let mut labels = vec![usize::MAX; n];
    for _ in 0..100 {
        let next: Vec<usize> = positions
            .iter()
            .map(|p| usize::from(dist2(p, &centers[1]) < dist2(p, &centers[0])))
            .collect();
        if next == labels {
            break;
        }
        labels = next;
        for (c, center) in centers.iter_mut().enumerate() {
            let members: Vec<&Vec<f64>> = positions.iter().zip(&labels).filter(|(_, &l)| l == c).map(|(p, _)| p).collect();
            if !members.is_empty() {
                *center = centroid(&members, d);
            }
        }
    }
    let ones = labels.iter().filter(|&&l| l == 1).count();
    Ok(TwoClusters {
        centers,
        sizes: [n - ones, ones],
        labels,
    })
}

use crate::spectrum::PowerSpectrum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub frequency: f64,
    pub value: f64,
}

/// The `count` largest strict local maxima, by value descending.
///
/// Interior points must exceed both neighbours; an endpoint must exceed its
/// single neighbour. Equal values are ordered by lower frequency first.
pub fn peak_pick(spectrum: &PowerSpectrum, count: usize) -> Vec<Peak> {
    let v = &spectrum.values;
    let f = spectrum.frequencies();
    let n = v.len();
    if n < 2 || count == 0 {
        return Vec::new();
    }
    let mut peaks: Vec<Peak> = (0..n)
        .filter(|&i| {
            let left = i == 0 || v[i] > v[i - 1];
            let right = i == n - 1 || v[i] > v[i + 1];
            left && right
        })
        .map(|i| Peak {
            index: i,
            frequency: f[i],
            value: v[i],
        })
        .collect();
    // stable sort keeps ascending frequency among equal values
    peaks.sort_by(|a, b| b.value.total_cmp(&a.value));
    peaks.truncate(count);
    peaks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::FrequencyGrid;

    fn spec(values: Vec<f64>) -> PowerSpectrum {
        let g = FrequencyGrid::uniform(values.len()).unwrap();
        PowerSpectrum::new(&g, values, "test", String::new())
    }

    #[test]
    fn hand_checked_peaks() {
        let p = peak_pick(&spec(vec![0.0, 1.0, 0.0, 2.0, 0.0]), 2);
        let got: Vec<(f64, f64)> = p.iter().map(|p| (p.frequency, p.value)).collect();
        assert_eq!(got, vec![(0.375, 2.0), (0.125, 1.0)]);
    }

    #[test]
    fn monotone_uses_endpoint() {
        let p = peak_pick(&spec(vec![0.0, 1.0, 2.0, 3.0]), 2);
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].frequency, p[0].value), (0.5, 3.0));
    }

    #[test]
    fn flat_has_no_peaks() {
        assert!(peak_pick(&spec(vec![1.0; 9]), 3).is_empty());
    }

    #[test]
    fn ties_prefer_lower_frequency() {
        let p = peak_pick(&spec(vec![0.0, 1.0, 0.0, 1.0, 0.0]), 1);
        assert_eq!(p[0].frequency, 0.125);
    }
}

//! Closed-form linear algebra on 3×3 matrices and 4-vectors.

pub type Vec4 = [f64; 4];
pub type Mat3 = [[f64; 3]; 3];

#[inline]
pub fn dot4(a: &Vec4, b: &Vec4) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

#[inline]
pub fn norm4(a: &Vec4) -> f64 {
    dot4(a, a).sqrt()
}

#[inline]
pub fn add4(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

#[inline]
pub fn sub4(a: &Vec4, b: &Vec4) -> Vec4 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

#[inline]
pub fn scale4(s: f64, a: &Vec4) -> Vec4 {
    [s * a[0], s * a[1], s * a[2], s * a[3]]
}

/// `a + s·b`
#[inline]
pub fn axpy4(a: &Vec4, s: f64, b: &Vec4) -> Vec4 {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2], a[3] + s * b[3]]
}

/// Removes the component of `a` along the unit vector `n`.
#[inline]
pub fn reject4(a: &Vec4, n: &Vec4) -> Vec4 {
    axpy4(a, -dot4(a, n), n)
}

fn det3_rows(r0: [f64; 3], r1: [f64; 3], r2: [f64; 3]) -> f64 {
    r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
}

/// Generalized cross product of three vectors in R⁴.
///
/// The result `x` satisfies `⟨x, w⟩ = det[a; b; c; w]` for every `w`, so it is
/// orthogonal to `a`, `b`, `c` and its length is the 3-volume they span.
pub fn cross4(a: &Vec4, b: &Vec4, c: &Vec4) -> Vec4 {
    let minor = |skip: usize| {
        let pick = |v: &Vec4| {
            let mut out = [0.0; 3];
            let mut k = 0;
            for (j, &x) in v.iter().enumerate() {
                if j != skip {
                    out[k] = x;
                    k += 1;
                }
            }
            out
        };
        det3_rows(pick(a), pick(b), pick(c))
    };
    // cofactors of the last row of the 4×4 matrix [a; b; c; w]
    [-minor(0), minor(1), -minor(2), minor(3)]
}

pub fn det3(m: &Mat3) -> f64 {
    det3_rows(m[0], m[1], m[2])
}

/// Inverse via the adjugate. Returns `None` when the determinant vanishes.
pub fn inv3(m: &Mat3) -> Option<Mat3> {
    let det = det3(m);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let inv_det = 1.0 / det;
    let mut out = [[0.0; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            // adj[i][j] = cofactor[j][i]
            let (r0, r1) = ((j + 1) % 3, (j + 2) % 3);
            let (c0, c1) = ((i + 1) % 3, (i + 2) % 3);
            *entry = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * inv_det;
        }
    }
    Some(out)
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn mat3_vec(a: &Mat3, v: &[f64; 3]) -> [f64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

pub fn transpose3(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

/// Eigenvalues of a symmetric 3×3 matrix, ascending, from the trigonometric
/// solution of the characteristic cubic.
pub fn sym_eigenvalues3(m: &Mat3) -> [f64; 3] {
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    if p1 == 0.0 {
        let mut d = [m[0][0], m[1][1], m[2][2]];
        d.sort_by(f64::total_cmp);
        return d;
    }
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    if p <= f64::EPSILON * q.abs().max(1.0) * 1e-2 {
        return [q, q, q];
    }
    let mut b = *m;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = (*entry - if i == j { q } else { 0.0 }) / p;
        }
    }
    let r = (det3(&b) / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let largest = q + 2.0 * p * phi.cos();
    let smallest = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let middle = 3.0 * q - largest - smallest;
    [smallest, middle, largest]
}

/// Hamilton product of quaternions stored as `(w, x, y, z)`.
pub fn quat_mul(p: &Vec4, q: &Vec4) -> Vec4 {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

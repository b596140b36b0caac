//! Word-level kernels for plain polynomials over GF(2).
//!
//! A plain polynomial is a little-endian slice of `u64` limbs: bit `k` of the
//! slice is the coefficient of `z^k`. Nothing here knows about Laurent orders.

/// Below this many limbs (4096 bits) multiplication is schoolbook.
pub(crate) const KARATSUBA_LIMBS: usize = 64;

#[inline]
pub(crate) fn limbs_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

#[inline]
pub(crate) fn get_bit(words: &[u64], k: usize) -> bool {
    (words[k / 64] >> (k % 64)) & 1 == 1
}

#[inline]
pub(crate) fn flip_bit(words: &mut [u64], k: usize) {
    words[k / 64] ^= 1 << (k % 64);
}

/// Bits `lo..lo+64` of `words`; positions outside the slice read as zero.
#[inline]
pub(crate) fn window(words: &[u64], lo: isize) -> u64 {
    let word_at = |i: isize| -> u64 {
        if i < 0 || i as usize >= words.len() {
            0
        } else {
            words[i as usize]
        }
    };
    let q = lo.div_euclid(64);
    let r = lo.rem_euclid(64) as u32;
    if r == 0 {
        word_at(q)
    } else {
        (word_at(q) >> r) | (word_at(q + 1) << (64 - r))
    }
}

/// `dst ^= src << offset` (bit offset). `dst` must be long enough to hold the
/// nonzero bits of the shifted source.
pub(crate) fn xor_shifted(dst: &mut [u64], src: &[u64], offset: usize) {
    let q = offset / 64;
    let r = (offset % 64) as u32;
    if r == 0 {
        for (d, s) in dst[q..].iter_mut().zip(src) {
            *d ^= *s;
        }
        return;
    }
    let mut carry = 0u64;
    for (i, &s) in src.iter().enumerate() {
        dst[q + i] ^= (s << r) | carry;
        carry = s >> (64 - r);
    }
    if carry != 0 {
        dst[q + src.len()] ^= carry;
    }
}

/// Copies bits `lo..lo+nbits` of `src` into a fresh limb vector.
pub(crate) fn extract(src: &[u64], lo: usize, nbits: usize) -> Vec<u64> {
    let n = limbs_for(nbits);
    let mut out: Vec<u64> = (0..n)
        .map(|i| window(src, (lo + 64 * i) as isize))
        .collect();
    mask_top(&mut out, nbits);
    out
}

/// Clears the bits at positions `>= nbits` in the last limb.
#[inline]
pub(crate) fn mask_top(words: &mut [u64], nbits: usize) {
    let r = nbits % 64;
    if r != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << r) - 1;
        }
    }
}

/// Index of the lowest set bit, if any.
pub(crate) fn lowest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| 64 * i + words[i].trailing_zeros() as usize)
}

/// Index of the highest set bit, if any.
pub(crate) fn highest_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .rposition(|&w| w != 0)
        .map(|i| 64 * i + 63 - words[i].leading_zeros() as usize)
}

/// Carry-less 64x64 -> 128 product, portable version.
pub(crate) fn clmul_soft(a: u64, b: u64) -> (u64, u64) {
    let mut table = [0u128; 16];
    for (i, entry) in table.iter_mut().enumerate() {
        for bit in 0..4 {
            if (i >> bit) & 1 == 1 {
                *entry ^= (a as u128) << bit;
            }
        }
    }
    let mut acc = 0u128;
    for nib in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (4 * nib)) & 0xf) as usize];
    }
    (acc as u64, (acc >> 64) as u64)
}

fn addmul_row_soft(acc: &mut [u64], a: &[u64], b: u64) {
    let mut carry = 0u64;
    for (k, &aw) in a.iter().enumerate() {
        let (lo, hi) = clmul_soft(aw, b);
        acc[k] ^= lo ^ carry;
        carry = hi;
    }
    if carry != 0 {
        acc[a.len()] ^= carry;
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq")]
unsafe fn addmul_row_clmul(acc: &mut [u64], a: &[u64], b: u64) {
    use core::arch::x86_64::{
        _mm_clmulepi64_si128, _mm_cvtsi128_si64, _mm_set_epi64x, _mm_unpackhi_epi64,
    };
    let bv = _mm_set_epi64x(0, b as i64);
    let mut carry = 0u64;
    for (k, &aw) in a.iter().enumerate() {
        let p = _mm_clmulepi64_si128(_mm_set_epi64x(0, aw as i64), bv, 0x00);
        let lo = _mm_cvtsi128_si64(p) as u64;
        let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)) as u64;
        acc[k] ^= lo ^ carry;
        carry = hi;
    }
    if carry != 0 {
        acc[a.len()] ^= carry;
    }
}

/// `acc ^= a * b` for a single limb `b`.
pub(crate) fn addmul_row(acc: &mut [u64], a: &[u64], b: u64) {
    if b == 0 {
        return;
    }
    #[cfg(target_arch = "x86_64")]
    {
        if std::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the required CPU feature was detected at runtime.
            unsafe { addmul_row_clmul(acc, a, b) };
            return;
        }
    }
    addmul_row_soft(acc, a, b);
}

fn xor_prefix(dst: &mut [u64], src: &[u64]) {
    let n = dst.len().min(src.len());
    for (d, s) in dst[..n].iter_mut().zip(&src[..n]) {
        *d ^= *s;
    }
    debug_assert!(src[n..].iter().all(|&w| w == 0));
}

fn schoolbook_into(out: &mut [u64], a: &[u64], b: &[u64]) {
    for (j, &bw) in b.iter().enumerate() {
        addmul_row(&mut out[j..], a, bw);
    }
}

/// `out ^= a * b`; `out` holds at least `a.len() + b.len()` limbs.
fn mul_into(out: &mut [u64], a: &[u64], b: &[u64]) {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.is_empty() {
        return;
    }
    if b.len() < KARATSUBA_LIMBS {
        schoolbook_into(out, a, b);
        return;
    }
    if a.len() >= 2 * b.len() {
        for (i, chunk) in a.chunks(b.len()).enumerate() {
            mul_into(&mut out[i * b.len()..], chunk, b);
        }
        return;
    }
    // b.len() <= a.len() < 2 * b.len(), so h <= b.len()
    let h = a.len().div_ceil(2);
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h);

    let mut z0 = vec![0u64; 2 * h];
    mul_into(&mut z0, a0, b0);
    let mut z2 = vec![0u64; a1.len() + b1.len()];
    mul_into(&mut z2, a1, b1);

    let mut sa = a0.to_vec();
    xor_prefix(&mut sa, a1);
    let mut sb = b0.to_vec();
    xor_prefix(&mut sb, b1);
    let mut z1 = vec![0u64; 2 * h];
    mul_into(&mut z1, &sa, &sb);
    xor_prefix(&mut z1, &z0);
    let z2_low = z2.len().min(z1.len());
    xor_prefix(&mut z1[..z2_low], &z2[..z2_low]);

    xor_prefix(out, &z0);
    xor_prefix(&mut out[2 * h..], &z2);
    let end = (h + z1.len()).min(out.len());
    xor_prefix(&mut out[h..end], &z1);
}

/// Product of two plain polynomials, `a.len() + b.len()` limbs.
pub(crate) fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    mul_into(&mut out, a, b);
    out
}

/// Schoolbook product, used as a reference in tests.
#[cfg(test)]
pub(crate) fn mul_schoolbook(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    schoolbook_into(&mut out, a, b);
    out
}

/// Division with remainder of plain polynomials.
///
/// `f` has `flen` significant bits, `g` has `glen >= 1` bits with bit
/// `glen - 1` set. Returns `(quotient, remainder)` as limb vectors; the
/// remainder has fewer than `glen - 1` significant bits.
///
/// Quotient limbs are produced top-down: the 64 quotient bits of a limb only
/// depend on the top 64 bits of `g`, so they are found bit-serially in a
/// register, after which `g * q` is cleared from the running remainder with
/// one carry-less row product.
pub(crate) fn divmod(f: &[u64], flen: usize, g: &[u64], glen: usize) -> (Vec<u64>, Vec<u64>) {
    assert!(glen >= 1, "division by zero polynomial");
    let dg = glen - 1;
    if flen < glen {
        let mut r = f[..limbs_for(flen)].to_vec();
        mask_top(&mut r, flen);
        return (Vec::new(), r);
    }
    let g = &g[..limbs_for(glen)];
    let qbits = flen - dg;
    let qlimbs = limbs_for(qbits);
    let mut rem = vec![0u64; limbs_for(flen) + 2];
    rem[..limbs_for(flen)].copy_from_slice(&f[..limbs_for(flen)]);
    mask_top(&mut rem[..limbs_for(flen)], flen);
    let mut quot = vec![0u64; qlimbs];
    let gtop = window(g, dg as isize - 63);

    for j in (0..qlimbs).rev() {
        let c = (qbits - 64 * j).min(64);
        let mut win = window(&rem, (64 * j + dg) as isize);
        let mut q = 0u64;
        for i in (0..c).rev() {
            if (win >> i) & 1 == 1 {
                q |= 1 << i;
                win ^= gtop >> (63 - i);
            }
        }
        quot[j] = q;
        addmul_row(&mut rem[j..], g, q);
    }
    rem.truncate(limbs_for(dg));
    mask_top(&mut rem, dg);
    debug_assert!(rem.len() * 64 >= dg);
    (quot, rem)
}

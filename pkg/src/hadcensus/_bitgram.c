/* Pairwise popcount kernel for bit-packed +-1 matrices.
 *
 * Rows are packed little-endian into w 64-bit words each; a set bit is a
 * -1 entry.  Two rows of an order-n Hadamard matrix are orthogonal iff
 * popcount(row_i XOR row_j) == n/2, so the whole Gram check reduces to a
 * triangular sweep of XOR+popcount row pairs.
 */
#define PY_SSIZE_T_CLEAN
#include <Python.h>
#include <stdint.h>

#ifdef __AVX2__
#include <immintrin.h>

static inline uint64_t hsum_epi64(__m256i v) {
    __m128i lo = _mm256_castsi256_si128(v);
    __m128i hi = _mm256_extracti128_si256(v, 1);
    __m128i s = _mm_add_epi64(lo, hi);
    return (uint64_t)_mm_cvtsi128_si64(s) +
           (uint64_t)_mm_extract_epi64(s, 1);
}
#endif

static uint64_t xor_popcount(const uint64_t *a, const uint64_t *b, Py_ssize_t w) {
    uint64_t count = 0;
    Py_ssize_t i = 0;
#ifdef __AVX2__
    const __m256i lut = _mm256_setr_epi8(
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
        0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    const __m256i zero = _mm256_setzero_si256();
    __m256i acc = _mm256_setzero_si256();
    for (; i + 4 <= w; i += 4) {
        __m256i x = _mm256_xor_si256(
            _mm256_loadu_si256((const __m256i *)(a + i)),
            _mm256_loadu_si256((const __m256i *)(b + i)));
        __m256i cnt = _mm256_add_epi8(
            _mm256_shuffle_epi8(lut, _mm256_and_si256(x, low)),
            _mm256_shuffle_epi8(lut, _mm256_and_si256(_mm256_srli_epi32(x, 4), low)));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(cnt, zero));
    }
    count = hsum_epi64(acc);
#endif
    for (; i < w; i++)
        count += (uint64_t)__builtin_popcountll(a[i] ^ b[i]);
    return count;
}

/* all_pairs_half(packed_rows: buffer, n: int, w: int) -> bool
 * True iff popcount(row_i XOR row_j) == n/2 for all i < j. */
static PyObject *all_pairs_half(PyObject *self, PyObject *args) {
    Py_buffer buf;
    Py_ssize_t n, w;
    if (!PyArg_ParseTuple(args, "y*nn", &buf, &n, &w))
        return NULL;
    if (buf.len < n * w * (Py_ssize_t)sizeof(uint64_t)) {
        PyBuffer_Release(&buf);
        PyErr_SetString(PyExc_ValueError, "buffer too small for n*w words");
        return NULL;
    }
    const uint64_t *rows = (const uint64_t *)buf.buf;
    const uint64_t half = (uint64_t)(n / 2);
    int ok = 1;
    /* Tile the i loop so a block of rows stays cache-resident while row j
     * streams through once per block (the sweep is bandwidth-bound). */
    const Py_ssize_t tile = 16;
    Py_BEGIN_ALLOW_THREADS
    for (Py_ssize_t i0 = 0; ok && i0 < n; i0 += tile) {
        Py_ssize_t i1 = i0 + tile < n ? i0 + tile : n;
        for (Py_ssize_t j = i0 + 1; ok && j < n; j++) {
            Py_ssize_t top = j < i1 ? j : i1;
            const uint64_t *rj = rows + j * w;
            for (Py_ssize_t i = i0; i < top; i++) {
                if (xor_popcount(rows + i * w, rj, w) != half) {
                    ok = 0;
                    break;
                }
            }
        }
    }
    Py_END_ALLOW_THREADS
    PyBuffer_Release(&buf);
    return PyBool_FromLong(ok);
}

static PyMethodDef methods[] = {
    {"all_pairs_half", all_pairs_half, METH_VARARGS,
     "Check popcount(row_i XOR row_j) == n/2 for all row pairs."},
    {NULL, NULL, 0, NULL},
};

static struct PyModuleDef moduledef = {
    PyModuleDef_HEAD_INIT, "_bitgram", NULL, -1, methods,
};

PyMODINIT_FUNC PyInit__bitgram(void) {
    return PyModule_Create(&moduledef);
}

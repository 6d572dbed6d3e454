/* Small numeric kernels: vector reductions, polynomial evaluation,
 * root finding, quadrature, 3x3 matrices, streaming statistics.
 * Heavy on float and double traffic by design. */

#include <stdio.h>
#include <string.h>
#include <math.h>

double nx_sum(const double *v, int n) {
    double s = 0.0;
    for (int i = 0; i < n; i++)
        s += v[i];
    return s;
}

double nx_mean(const double *v, int n) {
    if (n <= 0)
        return 0.0;
    return nx_sum(v, n) / (double)n;
}

double nx_variance(const double *v, int n) {
    if (n < 2)
        return 0.0;
    double m = nx_mean(v, n);
    double acc = 0.0;
    for (int i = 0; i < n; i++) {
        double d = v[i] - m;
        acc += d * d;
    }
    return acc / (double)(n - 1);
}

double nx_min(const double *v, int n) {
    double best = v[0];
    for (int i = 1; i < n; i++)
        if (v[i] < best)
            best = v[i];
    return best;
}

double nx_max(const double *v, int n) {
    double best = v[0];
    for (int i = 1; i < n; i++)
        if (v[i] > best)
            best = v[i];
    return best;
}

double nx_dot(const double *a, const double *b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; i++)
        s += a[i] * b[i];
    return s;
}

void nx_scale(double *v, int n, double k) {
    for (int i = 0; i < n; i++)
        v[i] *= k;
}

void nx_axpy(double *y, const double *x, int n, double a) {
    for (int i = 0; i < n; i++)
        y[i] += a * x[i];
}

double nx_norm2(const double *v, int n) {
    double s = 0.0;
    for (int i = 0; i < n; i++)
        s += v[i] * v[i];
    return sqrt(s);
}

double nx_poly_eval(const double *coef, int deg, double x) {
    double acc = coef[deg];
    for (int i = deg - 1; i >= 0; i--)
        acc = acc * x + coef[i];
    return acc;
}

double nx_poly_deriv_eval(const double *coef, int deg, double x) {
    double acc = coef[deg] * deg;
    for (int i = deg - 1; i >= 1; i--)
        acc = acc * x + coef[i] * i;
    return acc;
}

double nx_newton_sqrt(double x) {
    if (x <= 0.0)
        return 0.0;
    double g = x > 1.0 ? x * 0.5 : 1.0;
    for (int i = 0; i < 40; i++) {
        double next = 0.5 * (g + x / g);
        if (fabs(next - g) < 1e-14)
            return next;
        g = next;
    }
    return g;
}

double nx_bisect(double (*f)(double), double lo, double hi, int steps) {
    double flo = f(lo);
    for (int i = 0; i < steps; i++) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((flo < 0.0) == (fm < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double nx_trapezoid(double (*f)(double), double a, double b, int n) {
    double h = (b - a) / (double)n;
    double s = 0.5 * (f(a) + f(b));
    for (int i = 1; i < n; i++)
        s += f(a + h * (double)i);
    return s * h;
}

void nx_mat3_mul(const double a[9], const double b[9], double out[9]) {
    for (int r = 0; r < 3; r++)
        for (int c = 0; c < 3; c++) {
            double s = 0.0;
            for (int k = 0; k < 3; k++)
                s += a[r * 3 + k] * b[k * 3 + c];
            out[r * 3 + c] = s;
        }
}

double nx_mat3_det(const double m[9]) {
    return m[0] * (m[4] * m[8] - m[5] * m[7])
         - m[1] * (m[3] * m[8] - m[5] * m[6])
         + m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double nx_mat3_trace(const double m[9]) {
    return m[0] + m[4] + m[8];
}

struct nx_stats {
    long count;
    double mean;
    double m2;
};

void nx_stats_init(struct nx_stats *st) {
    st->count = 0;
    st->mean = 0.0;
    st->m2 = 0.0;
}

void nx_stats_push(struct nx_stats *st, double x) {
    st->count++;
    double d = x - st->mean;
    st->mean += d / (double)st->count;
    st->m2 += d * (x - st->mean);
}

double nx_stats_variance(const struct nx_stats *st) {
    if (st->count < 2)
        return 0.0;
    return st->m2 / (double)(st->count - 1);
}

float nx_clampf(float x, float lo, float hi) {
    if (x < lo)
        return lo;
    if (x > hi)
        return hi;
    return x;
}

float nx_lerpf(float a, float b, float t) {
    return a + (b - a) * t;
}

float nx_smoothstep(float e0, float e1, float x) {
    float t = nx_clampf((x - e0) / (e1 - e0), 0.0f, 1.0f);
    return t * t * (3.0f - 2.0f * t);
}

double nx_ratio_pair(double x, int k) {
    return x / (double)(k | 1);
}

double nx_ratio_quad(char a, char b, short i, short j) {
    return (double)(a * i) / (double)((b * j) | 1);
}

double nx_gain_pair(int n, const double *buf) {
    return buf[0] * (double)n + buf[1];
}

double nx_gain_trio(char c, double u, double v) {
    return u * (double)c + v;
}

double nx_geom_sum(int n, double r) {
    double term = 1.0;
    double s = 0.0;
    for (int i = 0; i < n; i++) {
        s += term;
        term *= r;
    }
    return s;
}

double nx_blend_mode(char mode, double a, double b) {
    switch (mode) {
    case 'a':
        return 0.5 * (a + b);
    case 'm':
        return a < b ? a : b;
    case 'M':
        return a > b ? a : b;
    case 'd':
        return a - b;
    default:
        return a;
    }
}

unsigned nx_rng_next(unsigned *state) {
    /* LCG, constants from the classic tables */
    *state = *state * 1664525u + 1013904223u;
    return *state >> 8;
}

void nx_histogram(const double *v, int n, double lo, double hi,
                  int *bins, int nbins) {
    memset(bins, 0, (size_t)nbins * sizeof(bins[0]));
    double width = (hi - lo) / (double)nbins;
    for (int i = 0; i < n; i++) {
        int b = (int)((v[i] - lo) / width);
        if (b < 0)
            b = 0;
        if (b >= nbins)
            b = nbins - 1;
        bins[b]++;
    }
}

static double cubic_probe(double x) {
    return x * x * x - 2.0 * x - 5.0;
}

int main(int argc, char **argv) {
    double data[32];
    double other[32];
    double saved[32];
    unsigned seed = 0x5eed;
    int n = 24 + argc * 8; /* 32 in practice; opaque to the optimizer */
    (void)argv;
    if (n > 32)
        n = 32;
    memset(saved, 0, (size_t)n * sizeof(saved[0]));
    for (int i = 0; i < 32; i++) {
        data[i] = (double)(nx_rng_next(&seed) % 1000) / 10.0 - 50.0;
        other[i] = (double)(nx_rng_next(&seed) % 1000) / 20.0;
    }

    double acc = 0.0;
    acc += nx_sum(data, 32);
    acc += nx_mean(data, 32) * 3.0;
    acc += nx_variance(data, 32);
    acc += nx_min(data, 32) - nx_max(data, 32);
    acc += nx_dot(data, other, 32) * 1e-3;
    acc += nx_norm2(other, 32);

    memcpy(saved, data, (size_t)(n / 2) * sizeof(saved[0]));
    nx_scale(other, 32, 0.5);
    nx_axpy(data, other, 32, 2.0);
    acc += nx_sum(data, 32) * 1e-2;
    acc += nx_sum(saved, n) * 1e-3;

    double coef[5] = {-5.0, -2.0, 0.0, 1.0, 0.25};
    acc += nx_poly_eval(coef, 4, 1.7);
    acc += nx_poly_deriv_eval(coef, 4, 1.7);
    acc += nx_newton_sqrt(2026.0);
    acc += nx_bisect(cubic_probe, 1.0, 3.0, 48);
    acc += nx_trapezoid(cubic_probe, 0.0, 2.0, 256);

    double ma[9] = {1, 2, 3, 0, 1, 4, 5, 6, 0};
    double mb[9] = {2, 0, 1, 1, 3, 0, 0, 1, 1};
    double mc[9];
    nx_mat3_mul(ma, mb, mc);
    acc += nx_mat3_det(mc) + nx_mat3_trace(mc);

    struct nx_stats st;
    nx_stats_init(&st);
    for (int i = 0; i < 32; i++)
        nx_stats_push(&st, data[i]);
    acc += nx_stats_variance(&st);

    float facc = 0.0f;
    facc += nx_clampf(3.7f, 0.0f, 1.0f);
    facc += nx_lerpf(-2.0f, 6.0f, 0.25f);
    facc += nx_smoothstep(0.0f, 8.0f, 3.0f);
    acc += (double)facc;

    acc += nx_ratio_pair(88.5, 6);
    acc += nx_ratio_quad('M', 'e', 12, 5);
    acc += nx_gain_pair(3, data);
    acc += nx_gain_trio('k', 1.25, -0.75);
    acc += nx_geom_sum(12, 0.5);
    acc += nx_blend_mode('a', 4.5, 9.5) + nx_blend_mode('M', 1.0, 2.0);

    int bins[8];
    nx_histogram(data, 32, -60.0, 60.0, bins, 8);
    int ticks = 0;
    for (int i = 0; i < 8; i++)
        ticks += bins[i] * (i + 1);

    printf("numerix %.6f %d\n", acc, ticks);
    return 0;
}

/* String routines over plain C buffers: scanning, case mapping,
 * hashing, parsing, small edit distance.  Everything external so the
 * symbols survive linking at every optimization level. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

unsigned long sk_length(const char *s) {
    const char *p = s;
    while (*p)
        p++;
    return (unsigned long)(p - s);
}

char *sk_copy(char *dst, const char *src) {
    char *d = dst;
    while ((*d++ = *src++) != '\0')
        ;
    return dst;
}

char *sk_concat(char *dst, const char *src) {
    char *d = dst;
    while (*d)
        d++;
    while ((*d++ = *src++) != '\0')
        ;
    return dst;
}

int sk_find_char(const char *s, char c) {
    for (int i = 0; s[i]; i++)
        if (s[i] == c)
            return i;
    return -1;
}

int sk_rfind_char(const char *s, char c) {
    int hit = -1;
    for (int i = 0; s[i]; i++)
        if (s[i] == c)
            hit = i;
    return hit;
}

int sk_find_sub(const char *hay, const char *needle) {
    if (!*needle)
        return 0;
    for (int i = 0; hay[i]; i++) {
        int j = 0;
        while (needle[j] && hay[i + j] == needle[j])
            j++;
        if (!needle[j])
            return i;
    }
    return -1;
}

int sk_starts_with(const char *s, const char *prefix) {
    while (*prefix) {
        if (*s++ != *prefix++)
            return 0;
    }
    return 1;
}

int sk_ends_with(const char *s, const char *suffix) {
    unsigned long ls = sk_length(s);
    unsigned long lf = sk_length(suffix);
    if (lf > ls)
        return 0;
    return memcmp(s + ls - lf, suffix, lf) == 0;
}

char sk_upper_char(char c) {
    if (c >= 'a' && c <= 'z')
        return (char)(c - 'a' + 'A');
    return c;
}

char sk_lower_char(char c) {
    if (c >= 'A' && c <= 'Z')
        return (char)(c - 'A' + 'a');
    return c;
}

void sk_to_upper(char *s) {
    for (; *s; s++)
        *s = sk_upper_char(*s);
}

void sk_to_lower(char *s) {
    for (; *s; s++)
        *s = sk_lower_char(*s);
}

const char *sk_trim_left(const char *s) {
    while (*s == ' ' || *s == '\t' || *s == '\n')
        s++;
    return s;
}

void sk_trim_right(char *s) {
    long i = (long)sk_length(s) - 1;
    while (i >= 0 && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n'))
        s[i--] = '\0';
}

void sk_reverse(char *s) {
    long i = 0;
    long j = (long)sk_length(s) - 1;
    while (i < j) {
        char t = s[i];
        s[i] = s[j];
        s[j] = t;
        i++;
        j--;
    }
}

int sk_count_words(const char *s) {
    int words = 0;
    int inside = 0;
    for (; *s; s++) {
        if (*s == ' ' || *s == '\t' || *s == '\n') {
            inside = 0;
        } else if (!inside) {
            inside = 1;
            words++;
        }
    }
    return words;
}

int sk_split_count(const char *s, char sep) {
    if (!*s)
        return 0;
    int parts = 1;
    for (; *s; s++)
        if (*s == sep)
            parts++;
    return parts;
}

int sk_is_blank(const char *s) {
    for (; *s; s++)
        if (*s != ' ' && *s != '\t' && *s != '\n')
            return 0;
    return 1;
}

int sk_is_numeric(const char *s) {
    if (!*s)
        return 0;
    if (*s == '-' || *s == '+')
        s++;
    int digits = 0;
    int dots = 0;
    for (; *s; s++) {
        if (*s >= '0' && *s <= '9')
            digits++;
        else if (*s == '.')
            dots++;
        else
            return 0;
    }
    return digits > 0 && dots <= 1;
}

int sk_count_digits(const char *s) {
    int n = 0;
    for (; *s; s++)
        n += (*s >= '0' && *s <= '9');
    return n;
}

int sk_ascii_code(const char *s) {
    return (s[0] * 7 + s[1]) & 0x7F;
}

int sk_bracket_depth(const char *s) {
    int depth = 0;
    int peak = 0;
    for (; *s; s++) {
        if (*s == '(' || *s == '[' || *s == '{')
            depth++;
        else if (*s == ')' || *s == ']' || *s == '}')
            depth--;
        if (depth > peak)
            peak = depth;
        if (depth < 0)
            return -1;
    }
    return depth == 0 ? peak : -1;
}

int sk_head_tail_code(const char *s) {
    int len = 0;
    while (s[len])
        len++;
    int code = 0;
    for (int i = 0; i < 3 && i < len; i++)
        code = code * 31 + s[i];
    for (int i = len - 3; i < len; i++)
        if (i >= 0)
            code = code * 37 + s[i];
    return code;
}

int sk_count_vowels(const char *s) {
    int n = 0;
    for (; *s; s++) {
        switch (sk_lower_char(*s)) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u':
            n++;
            break;
        default:
            break;
        }
    }
    return n;
}

int sk_longest_run(const char *s) {
    int best = 0;
    int i = 0;
    while (s[i]) {
        int j = i;
        while (s[j] && s[j] == s[i])
            j++;
        if (j - i > best)
            best = j - i;
        i = j;
    }
    return best;
}

int sk_first_digit(const char *s) {
    for (int i = 0; s[i]; i++)
        if (s[i] >= '0' && s[i] <= '9')
            return s[i] - '0';
    return -1;
}

/* Blend byte values through a serial double recurrence.  The chain is
 * order-dependent, so it survives optimization without reassociation. */
int sk_melody_code(const char *s) {
    double acc = 1.0;
    for (int i = 0; s[i]; i++)
        acc = acc * 0.75 + (double)(unsigned char)s[i] * 0.125;
    return (int)acc & 0x7fff;
}

int sk_norm_width(const char *s) {
    size_t n = strlen(s);
    return (int)(n % 97u);
}

unsigned sk_hash_fnv(const char *s) {
    unsigned h = 2166136261u;
    while (*s) {
        h ^= (unsigned char)*s++;
        h *= 16777619u;
    }
    return h;
}

unsigned sk_hash_djb2(const char *s) {
    unsigned h = 5381u;
    while (*s)
        h = h * 33u + (unsigned char)*s++;
    return h;
}

long sk_parse_int(const char *s, int *ok) {
    long v = 0;
    int neg = 0;
    int any = 0;
    s = sk_trim_left(s);
    if (*s == '-') {
        neg = 1;
        s++;
    } else if (*s == '+') {
        s++;
    }
    while (*s >= '0' && *s <= '9') {
        v = v * 10 + (*s - '0');
        any = 1;
        s++;
    }
    if (ok)
        *ok = any;
    return neg ? -v : v;
}

unsigned long sk_parse_hex(const char *s, int *ok) {
    unsigned long v = 0;
    int any = 0;
    if (s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s += 2;
    for (;; s++) {
        char c = *s;
        int d;
        if (c >= '0' && c <= '9')
            d = c - '0';
        else if (c >= 'a' && c <= 'f')
            d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F')
            d = c - 'A' + 10;
        else
            break;
        v = v * 16 + (unsigned)d;
        any = 1;
    }
    if (ok)
        *ok = any;
    return v;
}

int sk_natural_compare(const char *a, const char *b) {
    while (*a && *b) {
        if (*a >= '0' && *a <= '9' && *b >= '0' && *b <= '9') {
            long va = 0, vb = 0;
            while (*a >= '0' && *a <= '9')
                va = va * 10 + (*a++ - '0');
            while (*b >= '0' && *b <= '9')
                vb = vb * 10 + (*b++ - '0');
            if (va != vb)
                return va < vb ? -1 : 1;
            continue;
        }
        if (*a != *b)
            return (unsigned char)*a < (unsigned char)*b ? -1 : 1;
        a++;
        b++;
    }
    if (*a)
        return 1;
    if (*b)
        return -1;
    return 0;
}

int sk_edit_distance(const char *a, const char *b) {
    /* two-row DP; fine for the short strings this tool handles */
    enum { CAP = 128 };
    static int row0[CAP], row1[CAP];
    int la = (int)sk_length(a);
    int lb = (int)sk_length(b);
    if (lb >= CAP)
        lb = CAP - 1;
    for (int j = 0; j <= lb; j++)
        row0[j] = j;
    for (int i = 1; i <= la; i++) {
        row1[0] = i;
        for (int j = 1; j <= lb; j++) {
            int sub = row0[j - 1] + (a[i - 1] != b[j - 1]);
            int del = row0[j] + 1;
            int ins = row1[j - 1] + 1;
            int best = sub < del ? sub : del;
            row1[j] = best < ins ? best : ins;
        }
        memcpy(row0, row1, (size_t)(lb + 1) * sizeof(int));
    }
    return row0[lb];
}

void sk_rot13(char *s) {
    for (; *s; s++) {
        char c = *s;
        if (c >= 'a' && c <= 'z')
            *s = (char)('a' + (c - 'a' + 13) % 26);
        else if (c >= 'A' && c <= 'Z')
            *s = (char)('A' + (c - 'A' + 13) % 26);
    }
}

int sk_pack_pair(int hi, int lo) {
    return (hi << 16) | (lo & 0xFFFF);
}

int sk_clamp_len(int len, int cap) {
    return len > cap ? cap : (len < 0 ? 0 : len);
}

int sk_wrap_index(int idx, int mod) {
    int r = idx % mod;
    return r < 0 ? r + mod : r;
}

int sk_blend_key(char hi, char lo, int salt) {
    return (hi * 131 + lo) ^ salt;
}

int sk_mix_code(char a, char b, char c, short k) {
    return (a * 7 + b * 5 + c * 3) ^ k;
}

int sk_pack_trio(char a, char b, int w) {
    return (a << 20) | (b << 12) | (w & 0xFFF);
}

int sk_pack_quad(char a, char b, char c, short d) {
    return (a << 24) | (b << 16) | (c << 8) | (d & 0xFF);
}

int sk_pack_ref(const char *s) {
    return (s[0] << 8) | (s[1] & 0xFF);
}

void sk_format_size(unsigned long bytes, char *out) {
    const char *units[] = {"B", "KB", "MB", "GB"};
    int u = 0;
    unsigned long whole = bytes;
    unsigned long frac = 0;
    while (whole >= 1024 && u < 3) {
        frac = (whole % 1024) * 10 / 1024;
        whole /= 1024;
        u++;
    }
    sprintf(out, "%lu.%lu%s", whole, frac, units[u]);
}

int main(int argc, char **argv) {
    char buf[256];
    char small[64];
    unsigned acc = 0;
    (void)argv;

    sk_copy(buf, "The Quick brown FOX jumps  over\tlazy dogs 42 times");
    /* argc keeps the copy length opaque, so these stay real calls */
    size_t span = (size_t)sk_length(buf) + (size_t)(argc - 1);
    if (span > 63u)
        span = 63u;
    memcpy(small, buf, span);
    small[span] = '\0';
    acc ^= sk_hash_fnv(small);
    memset(small + span / 2u, 0, span / 2u);
    acc ^= (unsigned)small[span - 1u];
    acc ^= sk_hash_fnv(buf);
    sk_to_lower(buf);
    acc ^= sk_hash_djb2(buf);
    sk_to_upper(buf);
    acc ^= sk_hash_fnv(buf);
    sk_reverse(buf);
    acc ^= (unsigned)sk_count_words(buf);
    acc ^= (unsigned)sk_split_count(buf, ' ');

    acc ^= (unsigned)sk_find_char("abcdefg", 'e');
    acc ^= (unsigned)sk_rfind_char("abcabcabc", 'b');
    acc ^= (unsigned)sk_find_sub("needle in a haystack", "hay");
    acc ^= (unsigned)sk_starts_with("prefix-check", "pre");
    acc ^= (unsigned)sk_ends_with("suffix-check", "eck");

    sk_copy(small, "  padded value\t\n");
    sk_trim_right(small);
    acc ^= sk_hash_fnv(sk_trim_left(small));

    int ok = 0;
    acc ^= (unsigned)sk_parse_int(" -48151623", &ok) + (unsigned)ok;
    acc ^= (unsigned)sk_parse_hex("0xBEEF42", &ok) + (unsigned)ok;

    acc ^= (unsigned)sk_natural_compare("file10.txt", "file9.txt");
    acc ^= (unsigned)sk_edit_distance("kitten", "sitting");
    acc ^= (unsigned)sk_edit_distance("flaw", "lawn");

    sk_copy(small, "Why did the scope fail");
    sk_rot13(small);
    acc ^= sk_hash_djb2(small);

    acc ^= (unsigned)sk_is_blank(" \t ") + (unsigned)sk_is_blank("x");
    acc ^= (unsigned)sk_count_vowels("sequoia and iou");
    acc ^= (unsigned)sk_longest_run("aabbbbccddddd");
    acc ^= (unsigned)sk_first_digit("abc37def");
    acc ^= (unsigned)sk_is_numeric("-31.25") + (unsigned)sk_is_numeric("9.9.9");
    acc ^= (unsigned)sk_count_digits("a1b22c333");
    acc ^= (unsigned)sk_ascii_code("Gq");
    acc ^= (unsigned)sk_bracket_depth("a(b[c]{d})e");
    acc ^= (unsigned)sk_head_tail_code("checkpoint");
    acc ^= (unsigned)sk_melody_code("resonant chamber tone");
    acc ^= (unsigned)sk_norm_width("column width probe string");
    acc ^= (unsigned)sk_clamp_len(300, 255) + (unsigned)sk_wrap_index(-7, 5);
    acc ^= (unsigned)sk_blend_key('H', 'q', 0x1F2E);
    acc ^= (unsigned)sk_mix_code('x', 'y', 'z', 0x33);

    acc ^= (unsigned)sk_pack_pair(0x7A, 0x3F5);
    acc ^= (unsigned)sk_pack_trio('K', 'q', 0x9AC);
    acc ^= (unsigned)sk_pack_quad('a', 'b', 'c', 0x77);
    acc ^= (unsigned)sk_pack_ref("Zx");

    sk_format_size(123456789ul, small);
    acc ^= sk_hash_fnv(small);
    sk_concat(small, "|tail");
    acc ^= sk_hash_djb2(small);

    printf("strkit %u\n", acc);
    return 0;
}

/* Byte packing and framing: endian loads and stores, varints, zigzag,
 * CRC32 and Adler32, base64 and hex codecs, run-length framing, and a
 * bit reader.  Dense in shifts and masks. */

#include <stdio.h>
#include <string.h>

unsigned pf_load_le16(const unsigned char *p) {
    return (unsigned)p[0] | ((unsigned)p[1] << 8);
}

unsigned pf_load_be16(const unsigned char *p) {
    return ((unsigned)p[0] << 8) | (unsigned)p[1];
}

unsigned long pf_load_le32(const unsigned char *p) {
    return (unsigned long)p[0] | ((unsigned long)p[1] << 8)
         | ((unsigned long)p[2] << 16) | ((unsigned long)p[3] << 24);
}

unsigned long pf_load_be32(const unsigned char *p) {
    return ((unsigned long)p[0] << 24) | ((unsigned long)p[1] << 16)
         | ((unsigned long)p[2] << 8) | (unsigned long)p[3];
}

void pf_store_le16(unsigned char *p, unsigned v) {
    p[0] = (unsigned char)v;
    p[1] = (unsigned char)(v >> 8);
}

void pf_store_le32(unsigned char *p, unsigned long v) {
    p[0] = (unsigned char)v;
    p[1] = (unsigned char)(v >> 8);
    p[2] = (unsigned char)(v >> 16);
    p[3] = (unsigned char)(v >> 24);
}

void pf_store_be32(unsigned char *p, unsigned long v) {
    p[0] = (unsigned char)(v >> 24);
    p[1] = (unsigned char)(v >> 16);
    p[2] = (unsigned char)(v >> 8);
    p[3] = (unsigned char)v;
}

int pf_varint_encode(unsigned long v, unsigned char *out) {
    int n = 0;
    while (v >= 0x80) {
        out[n++] = (unsigned char)(v | 0x80);
        v >>= 7;
    }
    out[n++] = (unsigned char)v;
    return n;
}

int pf_varint_decode(const unsigned char *in, int avail, unsigned long *out) {
    unsigned long v = 0;
    int shift = 0;
    for (int i = 0; i < avail && shift < 64; i++) {
        v |= (unsigned long)(in[i] & 0x7F) << shift;
        if (!(in[i] & 0x80)) {
            *out = v;
            return i + 1;
        }
        shift += 7;
    }
    return -1;
}

unsigned pf_zigzag_encode(int v) {
    return ((unsigned)v << 1) ^ (unsigned)(v >> 31);
}

int pf_zigzag_decode(unsigned z) {
    return (int)(z >> 1) ^ -(int)(z & 1);
}

unsigned long pf_crc32_update(unsigned long crc, const unsigned char *buf,
                              unsigned len) {
    crc ^= 0xFFFFFFFFul;
    for (unsigned i = 0; i < len; i++) {
        crc ^= buf[i];
        for (int k = 0; k < 8; k++)
            crc = (crc >> 1) ^ (0xEDB88320ul & (0ul - (crc & 1)));
    }
    return crc ^ 0xFFFFFFFFul;
}

unsigned long pf_adler32(const unsigned char *buf, unsigned len) {
    unsigned long a = 1, b = 0;
    for (unsigned i = 0; i < len; i++) {
        a = (a + buf[i]) % 65521;
        b = (b + a) % 65521;
    }
    return (b << 16) | a;
}

unsigned pf_sum16(const unsigned char *buf, int len) {
    unsigned s = 0;
    for (int i = 0; i + 1 < len; i += 2)
        s = (s + ((unsigned)buf[i] << 8) + buf[i + 1]) & 0xFFFF;
    return s;
}

unsigned pf_first_nonzero(const unsigned char *buf, int len) {
    for (int i = 0; i < len; i++)
        if (buf[i])
            return (unsigned)i;
    return (unsigned)len;
}

/* Exponential-decay checksum.  The accumulator is a serial double
 * chain, so the float mix stays put at every optimization level. */
unsigned pf_decay_code(const unsigned char *buf, int len) {
    double acc = 0.0;
    for (int i = 0; i < len; i++)
        acc = acc * 0.875 + (double)buf[i];
    return (unsigned)acc & 0xffffu;
}

unsigned pf_tail_tag(const unsigned char *buf, int len) {
    return ((unsigned)buf[len - 1] << 8) | (unsigned)(len & 0xFF);
}

unsigned pf_window_max(const unsigned char *buf, int len) {
    unsigned best = 0;
    for (int i = 0; i + 4 <= len; i++) {
        unsigned s = 0;
        for (int k = 0; k < 4; k++)
            s += buf[i + k];
        if (s > best)
            best = s;
    }
    return best;
}

unsigned char pf_xor_checksum(const unsigned char *buf, unsigned len) {
    unsigned char x = 0;
    for (unsigned i = 0; i < len; i++)
        x ^= buf[i];
    return x;
}

static const char B64[] =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int pf_base64_encode(const unsigned char *in, int len, char *out) {
    int o = 0;
    int i = 0;
    while (i + 2 < len) {
        unsigned v = ((unsigned)in[i] << 16) | ((unsigned)in[i + 1] << 8)
                   | in[i + 2];
        out[o++] = B64[(v >> 18) & 63];
        out[o++] = B64[(v >> 12) & 63];
        out[o++] = B64[(v >> 6) & 63];
        out[o++] = B64[v & 63];
        i += 3;
    }
    int rem = len - i;
    if (rem == 1) {
        unsigned v = (unsigned)in[i] << 16;
        out[o++] = B64[(v >> 18) & 63];
        out[o++] = B64[(v >> 12) & 63];
        out[o++] = '=';
        out[o++] = '=';
    } else if (rem == 2) {
        unsigned v = ((unsigned)in[i] << 16) | ((unsigned)in[i + 1] << 8);
        out[o++] = B64[(v >> 18) & 63];
        out[o++] = B64[(v >> 12) & 63];
        out[o++] = B64[(v >> 6) & 63];
        out[o++] = '=';
    }
    out[o] = '\0';
    return o;
}

static int b64_value(char c) {
    if (c >= 'A' && c <= 'Z')
        return c - 'A';
    if (c >= 'a' && c <= 'z')
        return c - 'a' + 26;
    if (c >= '0' && c <= '9')
        return c - '0' + 52;
    if (c == '+')
        return 62;
    if (c == '/')
        return 63;
    return -1;
}

int pf_base64_decode(const char *in, unsigned char *out) {
    int o = 0;
    unsigned v = 0;
    int have = 0;
    for (; *in && *in != '='; in++) {
        int d = b64_value(*in);
        if (d < 0)
            return -1;
        v = (v << 6) | (unsigned)d;
        have += 6;
        if (have >= 8) {
            have -= 8;
            out[o++] = (unsigned char)(v >> have);
        }
    }
    return o;
}

void pf_hex_encode(const unsigned char *in, int len, char *out) {
    static const char HEX[] = "0123456789abcdef";
    for (int i = 0; i < len; i++) {
        out[i * 2] = HEX[in[i] >> 4];
        out[i * 2 + 1] = HEX[in[i] & 15];
    }
    out[len * 2] = '\0';
}

int pf_hex_decode(const char *in, unsigned char *out) {
    int o = 0;
    while (in[0] && in[1]) {
        int hi, lo;
        char a = in[0], b = in[1];
        if (a >= '0' && a <= '9')
            hi = a - '0';
        else if (a >= 'a' && a <= 'f')
            hi = a - 'a' + 10;
        else
            return -1;
        if (b >= '0' && b <= '9')
            lo = b - '0';
        else if (b >= 'a' && b <= 'f')
            lo = b - 'a' + 10;
        else
            return -1;
        out[o++] = (unsigned char)((hi << 4) | lo);
        in += 2;
    }
    return o;
}

int pf_rle_compress(const unsigned char *in, int len, unsigned char *out) {
    int o = 0;
    int i = 0;
    while (i < len) {
        int run = 1;
        while (i + run < len && in[i + run] == in[i] && run < 255)
            run++;
        out[o++] = (unsigned char)run;
        out[o++] = in[i];
        i += run;
    }
    return o;
}

int pf_rle_expand(const unsigned char *in, int len, unsigned char *out) {
    int o = 0;
    for (int i = 0; i + 1 < len; i += 2) {
        int run = in[i];
        for (int k = 0; k < run; k++)
            out[o++] = in[i + 1];
    }
    return o;
}

unsigned pf_mix_pair(float x, float y) {
    return (unsigned)(x * 3.0f) ^ (unsigned)(y * 5.0f);
}

unsigned pf_mix_trio(char t, int a, int b) {
    return (unsigned)(t * 3) ^ ((unsigned)(a * 5) + (unsigned)b);
}

unsigned pf_frame_tag(char kind, char ver, short len, int crc, int off,
                      const unsigned char *p) {
    return ((unsigned)kind << 24) ^ ((unsigned)ver << 16)
         ^ ((unsigned)(len & 0xFFFF) << 8) ^ (unsigned)crc
         ^ ((unsigned)off << 4) ^ p[0];
}

struct pf_bitreader {
    const unsigned char *data;
    unsigned len;
    unsigned pos;
    unsigned bit;
};

void pf_bits_init(struct pf_bitreader *br, const unsigned char *data,
                  unsigned len) {
    br->data = data;
    br->len = len;
    br->pos = 0;
    br->bit = 0;
}

int pf_bits_read(struct pf_bitreader *br, int count) {
    int v = 0;
    while (count-- > 0) {
        if (br->pos >= br->len)
            return -1;
        v = (v << 1) | ((br->data[br->pos] >> (7 - br->bit)) & 1);
        if (++br->bit == 8) {
            br->bit = 0;
            br->pos++;
        }
    }
    return v;
}

unsigned pf_bits_remaining(const struct pf_bitreader *br) {
    return (br->len - br->pos) * 8 - br->bit;
}

int main(int argc, char **argv) {
    unsigned char buf[256];
    unsigned char scratch[256];
    char text[400];
    unsigned long acc = 0;

    const unsigned char payload[] =
        "pack me down and bring me back, byte for byte for byte";
    int plen = (int)sizeof(payload) - 1 - (argc - 1); /* opaque */
    (void)argv;
    memset(scratch, 0, (size_t)plen);
    memcpy(buf, payload, (size_t)plen);
    acc ^= pf_adler32(buf, (unsigned)plen);
    acc ^= (unsigned long)scratch[(size_t)plen - 1u];

    pf_store_le32(buf, 0xDEADBEEFul);
    pf_store_be32(buf + 4, 0xCAFEF00Dul);
    pf_store_le16(buf + 8, 0x1234);
    acc ^= pf_load_le32(buf);
    acc ^= pf_load_be32(buf + 4);
    acc ^= pf_load_le16(buf + 8) | (pf_load_be16(buf + 8) << 16);

    int n = pf_varint_encode(300, buf);
    n += pf_varint_encode(1ul << 33, buf + n);
    unsigned long v1 = 0, v2 = 0;
    int used = pf_varint_decode(buf, n, &v1);
    pf_varint_decode(buf + used, n - used, &v2);
    acc ^= v1 + (v2 >> 20);

    acc ^= pf_zigzag_encode(-121);
    acc ^= (unsigned)pf_zigzag_decode(241);

    acc ^= pf_crc32_update(0, payload, (unsigned)plen);
    acc ^= pf_adler32(payload, (unsigned)plen);
    acc ^= pf_xor_checksum(payload, (unsigned)plen);
    acc ^= pf_sum16(payload, plen);
    acc ^= pf_first_nonzero(payload, plen);
    acc ^= pf_tail_tag(payload, plen);
    acc ^= pf_window_max(payload, plen);
    acc ^= pf_decay_code(payload, plen);

    int elen = pf_base64_encode(payload, plen, text);
    int dlen = pf_base64_decode(text, scratch);
    acc ^= (unsigned long)(elen * 1000 + dlen);
    acc ^= pf_crc32_update(0, scratch, (unsigned)dlen);

    pf_hex_encode(payload, 16, text);
    dlen = pf_hex_decode(text, scratch);
    acc ^= pf_adler32(scratch, (unsigned)dlen);

    unsigned char runs[64];
    memset(runs, 'x', 40);
    memset(runs + 40, 'y', 10);
    runs[50] = 'z';
    int clen = pf_rle_compress(runs, 51, buf);
    int xlen = pf_rle_expand(buf, clen, scratch);
    acc ^= (unsigned long)(clen * 100 + xlen);

    acc ^= pf_mix_pair(12.5f, 30.25f);
    acc ^= pf_mix_trio('q', 1234, 99);
    acc ^= pf_frame_tag('F', 2, 512, 0x1D4C, 40, payload);

    struct pf_bitreader br;
    pf_bits_init(&br, payload, (unsigned)plen);
    int bits = 0;
    bits += pf_bits_read(&br, 3);
    bits += pf_bits_read(&br, 11);
    bits += pf_bits_read(&br, 7);
    acc ^= (unsigned long)bits + pf_bits_remaining(&br);

    printf("packfmt %lu\n", acc & 0xFFFFFFFFul);
    return 0;
}

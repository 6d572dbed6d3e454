/* A toy stack machine: opcode table, assembler helpers, stepper with a
 * wide dispatch switch, and a few canned programs.  Gives the extractor
 * big multiway branches and call-heavy builder code. */

#include <stdio.h>
#include <string.h>

enum vm_op {
    OP_HALT = 0,
    OP_PUSH,
    OP_POP,
    OP_DUP,
    OP_SWAP,
    OP_ADD,
    OP_SUB,
    OP_MUL,
    OP_DIV,
    OP_MOD,
    OP_NEG,
    OP_AND,
    OP_OR,
    OP_XOR,
    OP_SHL,
    OP_SHR,
    OP_EQ,
    OP_LT,
    OP_GT,
    OP_JMP,
    OP_JZ,
    OP_JNZ,
    OP_LOAD,
    OP_STORE,
    OP_PRINT
};

#define VM_STACK 64
#define VM_LOCALS 16
#define VM_CODE 256

struct vm {
    long stack[VM_STACK];
    long locals[VM_LOCALS];
    int sp;
    int pc;
    int halted;
    int fault;
    long out_hash;
    unsigned char code[VM_CODE];
    int code_len;
};

void vm_reset(struct vm *m) {
    m->sp = 0;
    m->pc = 0;
    m->halted = 0;
    m->fault = 0;
    m->out_hash = 0;
    for (int i = 0; i < VM_LOCALS; i++)
        m->locals[i] = 0;
}

int vm_push(struct vm *m, long v) {
    if (m->sp >= VM_STACK) {
        m->fault = 1;
        return -1;
    }
    m->stack[m->sp++] = v;
    return 0;
}

long vm_pop(struct vm *m) {
    if (m->sp <= 0) {
        m->fault = 1;
        return 0;
    }
    return m->stack[--m->sp];
}

long vm_peek(const struct vm *m) {
    return m->sp > 0 ? m->stack[m->sp - 1] : 0;
}

int vm_depth(const struct vm *m) {
    return m->sp;
}

const char *vm_op_name(int op) {
    switch (op) {
    case OP_HALT: return "halt";
    case OP_PUSH: return "push";
    case OP_POP: return "pop";
    case OP_DUP: return "dup";
    case OP_SWAP: return "swap";
    case OP_ADD: return "add";
    case OP_SUB: return "sub";
    case OP_MUL: return "mul";
    case OP_DIV: return "div";
    case OP_MOD: return "mod";
    case OP_NEG: return "neg";
    case OP_AND: return "and";
    case OP_OR: return "or";
    case OP_XOR: return "xor";
    case OP_SHL: return "shl";
    case OP_SHR: return "shr";
    case OP_EQ: return "eq";
    case OP_LT: return "lt";
    case OP_GT: return "gt";
    case OP_JMP: return "jmp";
    case OP_JZ: return "jz";
    case OP_JNZ: return "jnz";
    case OP_LOAD: return "load";
    case OP_STORE: return "store";
    case OP_PRINT: return "print";
    default: return "bad";
    }
}

int vm_op_has_arg(int op) {
    switch (op) {
    case OP_PUSH:
    case OP_JMP:
    case OP_JZ:
    case OP_JNZ:
    case OP_LOAD:
    case OP_STORE:
        return 1;
    default:
        return 0;
    }
}

int vm_arity(int op) {
    switch (op) {
    case OP_HALT:
        return 0;
    case OP_PUSH:
    case OP_POP:
    case OP_DUP:
    case OP_NEG:
    case OP_JMP:
    case OP_JZ:
    case OP_JNZ:
    case OP_LOAD:
    case OP_STORE:
    case OP_PRINT:
        return 1;
    default:
        return 2;
    }
}

int vm_is_branch(int op) {
    return op == OP_JMP || op == OP_JZ || op == OP_JNZ;
}

int vm_is_commutative(int op) {
    return op == OP_ADD || op == OP_MUL || op == OP_AND || op == OP_OR
        || op == OP_XOR || op == OP_EQ;
}

int vm_valid_opcode(int op) {
    return op >= OP_HALT && op <= OP_PRINT;
}

/* Cost weight for an opcode via a serial double recurrence; the chain
 * is order-dependent, so optimizers keep the float arithmetic. */
int vm_weight_code(int op) {
    double w = 1.0;
    for (int i = 0; i <= (op & 15); i++)
        w = w * 1.25 - 0.125;
    return (int)(w * 64.0) & 1023;
}

int vm_encoded_size(int op) {
    return 1 + vm_op_has_arg(op);
}

int vm_stack_effect(int op) {
    switch (op) {
    case OP_PUSH:
    case OP_DUP:
    case OP_LOAD:
        return 1;
    case OP_HALT:
    case OP_SWAP:
    case OP_NEG:
    case OP_JMP:
        return 0;
    case OP_POP:
    case OP_JZ:
    case OP_JNZ:
    case OP_STORE:
    case OP_PRINT:
        return -1;
    default:
        return -1; /* binary ops: two in, one out */
    }
}

long vm_binary(int op, long a, long b, int *fault) {
    switch (op) {
    case OP_ADD: return a + b;
    case OP_SUB: return a - b;
    case OP_MUL: return a * b;
    case OP_DIV:
        if (b == 0) {
            *fault = 1;
            return 0;
        }
        return a / b;
    case OP_MOD:
        if (b == 0) {
            *fault = 1;
            return 0;
        }
        return a % b;
    case OP_AND: return a & b;
    case OP_OR: return a | b;
    case OP_XOR: return a ^ b;
    case OP_SHL: return a << (b & 63);
    case OP_SHR: return (long)((unsigned long)a >> (b & 63));
    case OP_EQ: return a == b;
    case OP_LT: return a < b;
    case OP_GT: return a > b;
    default:
        *fault = 1;
        return 0;
    }
}

void vm_step(struct vm *m) {
    if (m->pc >= m->code_len) {
        m->halted = 1;
        return;
    }
    int op = m->code[m->pc++];
    int arg = 0;
    if (vm_op_has_arg(op)) {
        if (m->pc >= m->code_len) {
            m->fault = 1;
            m->halted = 1;
            return;
        }
        arg = m->code[m->pc++];
    }
    switch (op) {
    case OP_HALT:
        m->halted = 1;
        break;
    case OP_PUSH:
        vm_push(m, arg);
        break;
    case OP_POP:
        vm_pop(m);
        break;
    case OP_DUP:
        vm_push(m, vm_peek(m));
        break;
    case OP_SWAP: {
        long b = vm_pop(m);
        long a = vm_pop(m);
        vm_push(m, b);
        vm_push(m, a);
        break;
    }
    case OP_NEG:
        vm_push(m, -vm_pop(m));
        break;
    case OP_JMP:
        m->pc = arg;
        break;
    case OP_JZ:
        if (vm_pop(m) == 0)
            m->pc = arg;
        break;
    case OP_JNZ:
        if (vm_pop(m) != 0)
            m->pc = arg;
        break;
    case OP_LOAD:
        vm_push(m, m->locals[arg & (VM_LOCALS - 1)]);
        break;
    case OP_STORE:
        m->locals[arg & (VM_LOCALS - 1)] = vm_pop(m);
        break;
    case OP_PRINT:
        m->out_hash = m->out_hash * 31 + vm_pop(m);
        break;
    default: {
        long b = vm_pop(m);
        long a = vm_pop(m);
        vm_push(m, vm_binary(op, a, b, &m->fault));
        break;
    }
    }
    if (m->fault)
        m->halted = 1;
}

long vm_run(struct vm *m, int max_steps) {
    vm_reset(m);
    int steps = 0;
    while (!m->halted && steps < max_steps) {
        vm_step(m);
        steps++;
    }
    return m->fault ? -1 : m->out_hash;
}

long vm_pair_code(enum vm_op a, enum vm_op b) {
    return (long)a * 100 + (long)b;
}

long vm_swap_cost(enum vm_op a, enum vm_op b) {
    if (a == b)
        return 0;
    if (vm_is_branch((int)a) || vm_is_branch((int)b))
        return 4;
    return vm_arity((int)a) == vm_arity((int)b) ? 1 : 2;
}

long vm_trio_code(int a, int b, int c) {
    return (long)a * 100 + (long)b * 10 + (long)c;
}

long vm_lerp_fix(int a, int b, int t) {
    return (long)a + ((long)(b - a) * t) / 256;
}

struct asmbuf {
    unsigned char *code;
    int len;
};

int asm_op(struct asmbuf *b, int op) {
    b->code[b->len++] = (unsigned char)op;
    return b->len - 1;
}

int asm_op_arg(struct asmbuf *b, int op, int arg) {
    b->code[b->len++] = (unsigned char)op;
    b->code[b->len++] = (unsigned char)arg;
    return b->len - 2;
}

void asm_patch(struct asmbuf *b, int at, int arg) {
    b->code[at + 1] = (unsigned char)arg;
}

int vm_disasm(const unsigned char *code, int len, char *out, int cap) {
    int o = 0;
    int pc = 0;
    while (pc < len && o + 16 < cap) {
        int op = code[pc++];
        const char *name = vm_op_name(op);
        while (*name)
            out[o++] = *name++;
        if (vm_op_has_arg(op) && pc < len) {
            int arg = code[pc++];
            out[o++] = ' ';
            if (arg >= 100)
                out[o++] = (char)('0' + arg / 100);
            if (arg >= 10)
                out[o++] = (char)('0' + (arg / 10) % 10);
            out[o++] = (char)('0' + arg % 10);
        }
        out[o++] = ';';
    }
    out[o] = '\0';
    return o;
}

void prog_countdown(struct asmbuf *b, int start) {
    asm_op_arg(b, OP_PUSH, start);
    asm_op_arg(b, OP_STORE, 0);
    int loop = b->len;
    asm_op_arg(b, OP_LOAD, 0);
    asm_op(b, OP_PRINT);
    asm_op_arg(b, OP_LOAD, 0);
    asm_op_arg(b, OP_PUSH, 1);
    asm_op(b, OP_SUB);
    asm_op(b, OP_DUP);
    asm_op_arg(b, OP_STORE, 0);
    asm_op_arg(b, OP_JNZ, loop);
    asm_op(b, OP_HALT);
}

void prog_gcd(struct asmbuf *b, int x, int y) {
    asm_op_arg(b, OP_PUSH, x);
    asm_op_arg(b, OP_STORE, 0);
    asm_op_arg(b, OP_PUSH, y);
    asm_op_arg(b, OP_STORE, 1);
    int loop = b->len;
    asm_op_arg(b, OP_LOAD, 1);
    int exit_jz = asm_op_arg(b, OP_JZ, 0);
    asm_op_arg(b, OP_LOAD, 0);
    asm_op_arg(b, OP_LOAD, 1);
    asm_op(b, OP_MOD);
    asm_op_arg(b, OP_LOAD, 1);
    asm_op_arg(b, OP_STORE, 0);
    asm_op_arg(b, OP_STORE, 1);
    asm_op_arg(b, OP_JMP, loop);
    asm_patch(b, exit_jz, b->len);
    asm_op_arg(b, OP_LOAD, 0);
    asm_op(b, OP_PRINT);
    asm_op(b, OP_HALT);
}

void prog_mixer(struct asmbuf *b) {
    asm_op_arg(b, OP_PUSH, 77);
    asm_op_arg(b, OP_PUSH, 13);
    asm_op(b, OP_MUL);
    asm_op_arg(b, OP_PUSH, 5);
    asm_op(b, OP_SHL);
    asm_op_arg(b, OP_PUSH, 0xFF);
    asm_op(b, OP_AND);
    asm_op_arg(b, OP_PUSH, 0x5A);
    asm_op(b, OP_XOR);
    asm_op(b, OP_DUP);
    asm_op_arg(b, OP_PUSH, 3);
    asm_op(b, OP_SHR);
    asm_op(b, OP_OR);
    asm_op(b, OP_PRINT);
    asm_op(b, OP_HALT);
}

int main(int argc, char **argv) {
    struct vm m;
    unsigned char code[VM_CODE];
    unsigned char shadow[VM_CODE];
    char listing[512];
    long acc = 0;

    struct asmbuf b = {code, 0};
    prog_countdown(&b, 9 + (argc - 1)); /* argc keeps sizes opaque */
    (void)argv;
    memset(shadow, 0, (size_t)b.len);
    memcpy(shadow, code, (size_t)b.len / 2u);
    acc += shadow[0] + shadow[(size_t)b.len - 1u];
    m.code_len = b.len;
    for (int i = 0; i < b.len; i++)
        m.code[i] = code[i];
    acc = acc * 7 + vm_run(&m, 1000);
    acc += vm_disasm(code, b.len, listing, sizeof(listing));

    b.len = 0;
    prog_gcd(&b, 252, 105);
    m.code_len = b.len;
    for (int i = 0; i < b.len; i++)
        m.code[i] = code[i];
    acc = acc * 7 + vm_run(&m, 1000);

    b.len = 0;
    prog_mixer(&b);
    m.code_len = b.len;
    for (int i = 0; i < b.len; i++)
        m.code[i] = code[i];
    acc = acc * 7 + vm_run(&m, 1000);
    acc += vm_depth(&m);

    /* drive the faults too so the guards stay honest */
    b.len = 0;
    asm_op_arg(&b, OP_PUSH, 1);
    asm_op_arg(&b, OP_PUSH, 0);
    asm_op(&b, OP_DIV);
    asm_op(&b, OP_HALT);
    m.code_len = b.len;
    for (int i = 0; i < b.len; i++)
        m.code[i] = code[i];
    acc = acc * 7 + vm_run(&m, 1000);

    acc += vm_pair_code(OP_MUL, OP_PRINT);
    acc += vm_trio_code(4, 7, 2);
    acc += vm_swap_cost(OP_ADD, OP_JZ) + vm_swap_cost(OP_SUB, OP_DIV);
    acc += vm_lerp_fix(100, 500, 64);
    for (int op = OP_HALT; op <= OP_PRINT; op++)
        acc += vm_arity(op) * 3 + vm_is_branch(op) + vm_stack_effect(op)
             + vm_is_commutative(op) + vm_valid_opcode(op) + vm_encoded_size(op)
             + vm_weight_code(op);

    int fault = 0;
    acc += vm_binary(OP_SHL, 3, 4, &fault);
    acc += vm_binary(OP_LT, 2, 9, &fault);
    acc += fault;

    printf("calcvm %ld\n", acc);
    return 0;
}

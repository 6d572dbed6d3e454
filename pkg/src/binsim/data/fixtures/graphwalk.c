/* Graph routines over a fixed-size adjacency matrix plus a union-find
 * and a tiny binary heap.  Traversals are the point: plenty of nested
 * loops, recursion, and early exits. */

#include <stdio.h>
#include <string.h>

#define GW_MAX 24

struct gw_graph {
    int n;
    unsigned char adj[GW_MAX][GW_MAX];
};

void gw_init(struct gw_graph *g, int n) {
    g->n = n;
    memset(g->adj, 0, (size_t)n * sizeof(g->adj[0]));
}

void gw_add_edge(struct gw_graph *g, int u, int v) {
    g->adj[u][v] = 1;
    g->adj[v][u] = 1;
}

void gw_add_arc(struct gw_graph *g, int u, int v) {
    g->adj[u][v] = 1;
}

void gw_remove_edge(struct gw_graph *g, int u, int v) {
    g->adj[u][v] = 0;
    g->adj[v][u] = 0;
}

int gw_has_edge(const struct gw_graph *g, int u, int v) {
    return g->adj[u][v] != 0;
}

int gw_degree(const struct gw_graph *g, int u) {
    int d = 0;
    for (int v = 0; v < g->n; v++)
        d += g->adj[u][v];
    return d;
}

int gw_max_degree(const struct gw_graph *g) {
    int best = 0;
    for (int u = 0; u < g->n; u++) {
        int d = 0;
        for (int v = 0; v < g->n; v++)
            d += g->adj[u][v];
        if (d > best)
            best = d;
    }
    return best;
}

int gw_self_loops(const struct gw_graph *g) {
    int n = 0;
    for (int u = 0; u < g->n; u++)
        n += g->adj[u][u];
    return n;
}

int gw_is_regular(const struct gw_graph *g) {
    int want = gw_degree(g, 0);
    for (int u = 1; u < g->n; u++)
        if (gw_degree(g, u) != want)
            return 0;
    return 1;
}

int gw_edge_count(const struct gw_graph *g) {
    int total = 0;
    for (int u = 0; u < g->n; u++)
        for (int v = u + 1; v < g->n; v++)
            if (g->adj[u][v])
                total++;
    return total;
}

int gw_bfs_order(const struct gw_graph *g, int start, int *order) {
    int queue[GW_MAX];
    int seen[GW_MAX];
    int head = 0, tail = 0, count = 0;
    memset(seen, 0, (size_t)g->n * sizeof(seen[0]));
    queue[tail++] = start;
    seen[start] = 1;
    while (head < tail) {
        int u = queue[head++];
        order[count++] = u;
        for (int v = 0; v < g->n; v++) {
            if (g->adj[u][v] && !seen[v]) {
                seen[v] = 1;
                queue[tail++] = v;
            }
        }
    }
    return count;
}

static void dfs_visit(const struct gw_graph *g, int u, int *seen,
                      int *order, int *count) {
    seen[u] = 1;
    order[(*count)++] = u;
    for (int v = 0; v < g->n; v++)
        if (g->adj[u][v] && !seen[v])
            dfs_visit(g, v, seen, order, count);
}

int gw_dfs_order(const struct gw_graph *g, int start, int *order) {
    int seen[GW_MAX];
    int count = 0;
    memset(seen, 0, (size_t)g->n * sizeof(seen[0]));
    dfs_visit(g, start, seen, order, &count);
    return count;
}

/* Decaying heat score across the adjacency matrix.  Serial double
 * recurrence, deliberately not reassociable. */
int gw_heat_code(const struct gw_graph *g) {
    double h = 0.0;
    for (int u = 0; u < g->n; u++)
        for (int v = 0; v < g->n; v++)
            h = h * 0.5 + (double)g->adj[u][v] * 0.25;
    return (int)(h * 1024.0) & 0xffff;
}

int gw_components(const struct gw_graph *g) {
    int seen[GW_MAX];
    int order[GW_MAX];
    int comps = 0;
    memset(seen, 0, (size_t)g->n * sizeof(seen[0]));
    for (int u = 0; u < g->n; u++) {
        if (!seen[u]) {
            comps++;
            int count = 0;
            dfs_visit(g, u, seen, order, &count);
        }
    }
    return comps;
}

static int cycle_visit(const struct gw_graph *g, int u, int parent, int *state) {
    state[u] = 1;
    for (int v = 0; v < g->n; v++) {
        if (!g->adj[u][v] || v == parent)
            continue;
        if (state[v])
            return 1;
        if (cycle_visit(g, v, u, state))
            return 1;
    }
    return 0;
}

int gw_has_cycle(const struct gw_graph *g) {
    int state[GW_MAX];
    memset(state, 0, (size_t)g->n * sizeof(state[0]));
    for (int u = 0; u < g->n; u++)
        if (!state[u] && cycle_visit(g, u, -1, state))
            return 1;
    return 0;
}

int gw_topo_sort(const struct gw_graph *g, int *order) {
    /* Kahn over the directed view; returns -1 on a cycle */
    int indeg[GW_MAX];
    int count = 0;
    memset(indeg, 0, (size_t)g->n * sizeof(indeg[0]));
    for (int u = 0; u < g->n; u++)
        for (int v = 0; v < g->n; v++)
            if (g->adj[u][v])
                indeg[v]++;
    int queue[GW_MAX];
    int head = 0, tail = 0;
    for (int u = 0; u < g->n; u++)
        if (indeg[u] == 0)
            queue[tail++] = u;
    while (head < tail) {
        int u = queue[head++];
        order[count++] = u;
        for (int v = 0; v < g->n; v++) {
            if (g->adj[u][v] && --indeg[v] == 0)
                queue[tail++] = v;
        }
    }
    return count == g->n ? count : -1;
}

int gw_shortest(const struct gw_graph *g, int src, int dst) {
    int dist[GW_MAX];
    int queue[GW_MAX];
    int head = 0, tail = 0;
    memset(dist, -1, (size_t)g->n * sizeof(dist[0]));
    dist[src] = 0;
    queue[tail++] = src;
    while (head < tail) {
        int u = queue[head++];
        if (u == dst)
            return dist[u];
        for (int v = 0; v < g->n; v++) {
            if (g->adj[u][v] && dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue[tail++] = v;
            }
        }
    }
    return -1;
}

int gw_count_triangles(const struct gw_graph *g) {
    int tri = 0;
    for (int a = 0; a < g->n; a++)
        for (int b = a + 1; b < g->n; b++) {
            if (!g->adj[a][b])
                continue;
            for (int c = b + 1; c < g->n; c++)
                if (g->adj[a][c] && g->adj[b][c])
                    tri++;
        }
    return tri;
}

void gw_floyd_small(const struct gw_graph *g, int dist[GW_MAX][GW_MAX]) {
    for (int i = 0; i < g->n; i++)
        for (int j = 0; j < g->n; j++)
            dist[i][j] = i == j ? 0 : (g->adj[i][j] ? 1 : 1 << 20);
    for (int k = 0; k < g->n; k++)
        for (int i = 0; i < g->n; i++)
            for (int j = 0; j < g->n; j++) {
                int via = dist[i][k] + dist[k][j];
                if (via < dist[i][j])
                    dist[i][j] = via;
            }
}

struct gw_dsu {
    int parent[GW_MAX];
    int rank[GW_MAX];
};

void gw_dsu_init(struct gw_dsu *d, int n) {
    memset(d->rank, 0, (size_t)n * sizeof(d->rank[0]));
    for (int i = 0; i < n; i++)
        d->parent[i] = i;
}

int gw_dsu_find(struct gw_dsu *d, int x) {
    while (d->parent[x] != x) {
        d->parent[x] = d->parent[d->parent[x]];
        x = d->parent[x];
    }
    return x;
}

int gw_dsu_union(struct gw_dsu *d, int a, int b) {
    int ra = gw_dsu_find(d, a);
    int rb = gw_dsu_find(d, b);
    if (ra == rb)
        return 0;
    if (d->rank[ra] < d->rank[rb]) {
        int t = ra;
        ra = rb;
        rb = t;
    }
    d->parent[rb] = ra;
    if (d->rank[ra] == d->rank[rb])
        d->rank[ra]++;
    return 1;
}

struct gw_pt {
    int x;
    int y;
};

int gw_pt_key(struct gw_pt p) {
    return p.x * 33 + p.y;
}

int gw_tag_key(char tag, float w) {
    return tag * 33 + (int)w;
}

int gw_span_cost(int a, int b, int c, int d, int e) {
    return a * 16 + b * 8 + c * 4 + d * 2 + e;
}

struct gw_heap {
    int items[GW_MAX * 2];
    int size;
};

void gw_heap_push(struct gw_heap *h, int key) {
    int i = h->size++;
    h->items[i] = key;
    while (i > 0) {
        int p = (i - 1) / 2;
        if (h->items[p] <= h->items[i])
            break;
        int t = h->items[p];
        h->items[p] = h->items[i];
        h->items[i] = t;
        i = p;
    }
}

int gw_heap_pop(struct gw_heap *h) {
    int top = h->items[0];
    h->items[0] = h->items[--h->size];
    int i = 0;
    for (;;) {
        int l = 2 * i + 1;
        int r = l + 1;
        int m = i;
        if (l < h->size && h->items[l] < h->items[m])
            m = l;
        if (r < h->size && h->items[r] < h->items[m])
            m = r;
        if (m == i)
            break;
        int t = h->items[m];
        h->items[m] = h->items[i];
        h->items[i] = t;
        i = m;
    }
    return top;
}

int main(int argc, char **argv) {
    struct gw_graph g;
    int held[GW_MAX];
    size_t keep = 11u + (size_t)(argc - 1); /* opaque to the optimizer */
    (void)argv;
    if (keep > (size_t)GW_MAX)
        keep = (size_t)GW_MAX;
    gw_init(&g, 12);
    gw_add_edge(&g, 0, 1);
    gw_add_edge(&g, 1, 2);
    gw_add_edge(&g, 2, 3);
    gw_add_edge(&g, 3, 0);
    gw_add_edge(&g, 2, 4);
    gw_add_edge(&g, 4, 5);
    gw_add_edge(&g, 5, 6);
    gw_add_edge(&g, 6, 4);
    gw_add_edge(&g, 7, 8);
    gw_add_edge(&g, 8, 9);
    gw_add_edge(&g, 0, 2);

    int acc = 0;
    acc += gw_edge_count(&g) * 100;
    acc += gw_degree(&g, 2) * 7;
    acc += gw_max_degree(&g) * 41 + gw_self_loops(&g) + gw_is_regular(&g);
    acc += gw_has_edge(&g, 4, 6);
    acc += gw_components(&g) * 1000;
    acc += gw_has_cycle(&g) * 11;
    acc += gw_heat_code(&g);
    acc += gw_count_triangles(&g) * 13;
    acc += gw_shortest(&g, 0, 6) * 17;
    acc -= gw_shortest(&g, 0, 9) * 3;

    int order[GW_MAX];
    acc += gw_bfs_order(&g, 0, order) + order[3];
    acc += gw_dfs_order(&g, 0, order) + order[2];

    memset(held, 0, keep * sizeof(held[0]));
    memcpy(held, order, (keep / 2u) * sizeof(held[0]));
    acc += held[0] + held[keep - 1u];

    gw_remove_edge(&g, 3, 0);
    acc += gw_has_cycle(&g) * 19;

    struct gw_graph dag;
    gw_init(&dag, 7);
    gw_add_arc(&dag, 0, 1);
    gw_add_arc(&dag, 0, 2);
    gw_add_arc(&dag, 1, 3);
    gw_add_arc(&dag, 2, 3);
    gw_add_arc(&dag, 3, 4);
    gw_add_arc(&dag, 4, 5);
    gw_add_arc(&dag, 2, 6);
    int topo[GW_MAX];
    int tn = gw_topo_sort(&dag, topo);
    acc += tn * 23 + topo[tn - 1];

    int dist[GW_MAX][GW_MAX];
    gw_floyd_small(&g, dist);
    acc += dist[0][6] * 29 + dist[7][9];

    struct gw_dsu d;
    gw_dsu_init(&d, 12);
    acc += gw_dsu_union(&d, 0, 1);
    acc += gw_dsu_union(&d, 1, 2);
    acc += gw_dsu_union(&d, 0, 2);
    acc += gw_dsu_union(&d, 5, 6);
    acc += gw_dsu_find(&d, 2) * 31;

    struct gw_pt pt = {5, 9};
    acc += gw_pt_key(pt);
    acc += gw_tag_key('w', 6.5f);
    acc += gw_span_cost(1, 2, 3, 4, 5);

    struct gw_heap h;
    h.size = 0;
    int feed[] = {42, 7, 19, 3, 25, 11, 30, 1};
    for (int i = 0; i < 8; i++)
        gw_heap_push(&h, feed[i]);
    int drain = 0;
    while (h.size > 0)
        drain = drain * 10 + gw_heap_pop(&h) % 10;
    acc += drain;

    printf("graphwalk %d\n", acc);
    return 0;
}

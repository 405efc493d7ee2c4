// planted: thread line 29: lock order cycle: a_mux <- b_mux <- a_mux
// The inverted order only appears once the helper is inlined into its caller.

struct mutex a_mux;
struct mutex b_mux;
int shared;

static void update_b(int v)
{
	mutex_lock(&b_mux);
	shared = v;
	mutex_unlock(&b_mux);
}

int path_one(int v)
{
	mutex_lock(&a_mux);
	update_b(v);
	mutex_unlock(&a_mux);
	return 0;
}

int path_two(int v)
{
	mutex_lock(&b_mux);
	if (v > 0) {
		shared = v;
	} else {
		mutex_lock(&a_mux);
		shared = -v;
		mutex_unlock(&a_mux);
	}
	mutex_unlock(&b_mux);
	return 0;
}

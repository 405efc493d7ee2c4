// planted: automaton line 17: double unlock of &table_lock
// The release helper unlocks its argument; the caller unlocks again.

struct mutex table_lock;
int table_size;

static void table_release(struct mutex *m)
{
	mutex_unlock(m);
}

int table_grow(int n)
{
	mutex_lock(&table_lock);
	table_size = table_size + n;
	table_release(&table_lock);
	mutex_unlock(&table_lock);
	return table_size;
}

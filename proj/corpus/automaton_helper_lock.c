// planted: automaton line 21: lock &cfg_lock held at exit
// A helper takes the lock for its caller; one caller path forgets to drop it.

struct mutex cfg_lock;
int cfg_value;

static void cfg_begin(void)
{
	mutex_lock(&cfg_lock);
}

static void cfg_end(void)
{
	mutex_unlock(&cfg_lock);
}

int cfg_update(int value)
{
	cfg_begin();
	if (value < 0)
		return -1;
	cfg_value = value;
	cfg_end();
	return 0;
}

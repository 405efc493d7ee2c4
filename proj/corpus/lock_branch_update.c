// planted: lock line 21: variable cache_gen accessed without lock &cache_lock held
// One branch bumps the generation after the lock has been dropped.

struct mutex cache_lock;
int cache_gen;
int cache_size;

int cache_resize(int n)
{
	mutex_lock(&cache_lock);
	cache_gen = cache_gen + 1;
	cache_size = n;
	if (n > 64) {
		cache_gen = cache_gen + 1;
		mutex_unlock(&cache_lock);
		return 1;
	}
	cache_gen = cache_gen + 1;
	mutex_unlock(&cache_lock);
	if (n == 0)
		cache_gen = 0;
	return 0;
}

void cache_flush(void)
{
	mutex_lock(&cache_lock);
	cache_gen = cache_gen + 1;
	cache_size = 0;
	mutex_unlock(&cache_lock);
}

void cache_touch(void)
{
	mutex_lock(&cache_lock);
	cache_gen = cache_gen + 1;
	mutex_unlock(&cache_lock);
}

// planted: thread line 25: lock order cycle: dev_lock <- list_lock <- dev_lock
// Two worker threads take the same pair of mutexes in opposite order.

struct mutex dev_lock;
struct mutex list_lock;
int devices;
int entries;

void *probe_worker(void *arg)
{
	mutex_lock(&dev_lock);
	mutex_lock(&list_lock);
	devices = devices + 1;
	entries = entries + 1;
	mutex_unlock(&list_lock);
	mutex_unlock(&dev_lock);
	return 0;
}

void *scan_worker(void *arg)
{
	mutex_lock(&list_lock);
	entries = entries - 1;
	if (entries < 0) {
		mutex_lock(&dev_lock);
		devices = 0;
		mutex_unlock(&dev_lock);
	}
	mutex_unlock(&list_lock);
	return 0;
}

int start_workers(void)
{
	int t1;
	int t2;

	pthread_create(&t1, 0, probe_worker, 0);
	pthread_create(&t2, 0, &scan_worker, 0);
	return 0;
}

// planted: thread line 37: lock order cycle: cpu_lock <- mem_lock <- net_lock <- cpu_lock
// Three subsystems each nest two locks, closing a cycle of length three.

struct mutex cpu_lock;
struct mutex mem_lock;
struct mutex net_lock;
int load;

void *cpu_thread(void *p)
{
	mutex_lock(&cpu_lock);
	mutex_lock(&mem_lock);
	load = 1;
	mutex_unlock(&mem_lock);
	mutex_unlock(&cpu_lock);
	return 0;
}

void *mem_thread(void *p)
{
	mutex_lock(&mem_lock);
	mutex_lock(&net_lock);
	load = 2;
	mutex_unlock(&net_lock);
	mutex_unlock(&mem_lock);
	return 0;
}

void *net_thread(void *p)
{
	int busy = 0;

	mutex_lock(&net_lock);
	while (busy < 3) {
		busy = busy + 1;
	}
	mutex_lock(&cpu_lock);
	load = 3;
	mutex_unlock(&cpu_lock);
	mutex_unlock(&net_lock);
	return 0;
}

void start(void)
{
	int t;

	pthread_create(&t, 0, cpu_thread, 0);
	pthread_create(&t, 0, mem_thread, 0);
	pthread_create(&t, 0, net_thread, 0);
}

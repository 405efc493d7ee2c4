// planted: automaton line 20: lock &stats_lock held at exit
// Only one of three branches releases the lock before returning.

struct mutex stats_lock;
int stats_hits;
int stats_miss;

int stats_record(int kind)
{
	mutex_lock(&stats_lock);
	if (kind == 0) {
		stats_hits = stats_hits + 1;
		mutex_unlock(&stats_lock);
		return 0;
	}
	if (kind == 1)
		stats_miss = stats_miss + 1;
	else
		stats_miss = 0;
	return 1;
}

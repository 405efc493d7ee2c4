// planted: lock line 58: variable pkt_count accessed without lock &stats_mutex held
// pkt_count is updated under stats_mutex everywhere except in the reset path.

struct mutex stats_mutex;
int pkt_count;

void rx_packet(void)
{
	mutex_lock(&stats_mutex);
	pkt_count = pkt_count + 1;
	mutex_unlock(&stats_mutex);
}

void tx_packet(void)
{
	mutex_lock(&stats_mutex);
	pkt_count = pkt_count + 1;
	mutex_unlock(&stats_mutex);
}

void drop_packet(void)
{
	mutex_lock(&stats_mutex);
	pkt_count = pkt_count - 1;
	mutex_unlock(&stats_mutex);
}

void rx_batch(int n)
{
	mutex_lock(&stats_mutex);
	pkt_count = pkt_count + n;
	mutex_unlock(&stats_mutex);
}

void tx_batch(int n)
{
	mutex_lock(&stats_mutex);
	pkt_count = pkt_count + n;
	mutex_unlock(&stats_mutex);
}

void stats_clear(void)
{
	mutex_lock(&stats_mutex);
	pkt_count = 0;
	mutex_unlock(&stats_mutex);
}

void stats_set(int v)
{
	mutex_lock(&stats_mutex);
	pkt_count = v;
	mutex_unlock(&stats_mutex);
}

void stats_reset(void)
{
	pkt_count = 0;
}

interface Worker {
    void work();
}
class Robot implements Worker {
    @Override
    public void work() {
        step();
    }

    void step() {
    }
}
